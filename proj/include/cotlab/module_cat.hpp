#pragma once

// Finitely presented Z/nZ-modules with exact kernels, cokernels, finite
// (co)limits over punctured cubes, and extension realization. A module is the
// cokernel of its presentation matrix (relations x generators); elements are
// generator-coordinate row vectors modulo the relation span. All
// equality-sensitive operations go through canonical invariant factors.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cotlab/ring_core.hpp"

namespace cotlab {

// Elementwise paths switch off above this size; see module_config().
struct ModuleConfig {
    i64 elementwise_bound = 4096;
    i64 max_enumeration = 1 << 20;  // hard cap, COTLAB_MAX_CARD overrides
};

ModuleConfig& module_config();

class FPModule;
struct Resolution;

namespace detail {
struct ModuleData {
    Ring ring;
    Matrix presentation;
    // Per-generator cyclic orders e_j | n after diagonalization (1 = trivial,
    // n = free); invariants = the e_j != 1 in divisibility order.
    std::vector<i64> gen_divisors;
    std::vector<i64> invariants;
    i64 cardinality = 1;
    Matrix coord;      // generators x generators: w = v*coord diagonalizes relations
    Matrix coord_inv;  // inverse of coord
    mutable std::once_flag resolution_once;
    mutable std::shared_ptr<const Resolution> resolution;
};
}  // namespace detail

class FPModule {
public:
    FPModule() = default;
    FPModule(Ring ring, Matrix presentation);

    static FPModule zero(const Ring& ring);
    static FPModule free_module(const Ring& ring, int rank);
    static FPModule cyclic(const Ring& ring, i64 order);  // Z/order, order | n
    static FPModule from_invariants(const Ring& ring, const std::vector<i64>& invs);

    const Ring& ring() const { return d_->ring; }
    const Matrix& presentation() const { return d_->presentation; }
    int generators() const { return d_->presentation.cols(); }
    int relations() const { return d_->presentation.rows(); }
    const std::vector<i64>& invariants() const { return d_->invariants; }
    const std::vector<i64>& gen_divisors() const { return d_->gen_divisors; }
    i64 cardinality() const { return d_->cardinality; }
    bool is_zero_module() const { return d_->cardinality == 1; }
    bool is_free() const;

    // Row j is the j-th diagonal generator expressed in module coordinates;
    // its order in the module is gen_divisors()[j].
    const Matrix& diagonal_basis() const { return d_->coord_inv; }

    // Canonical coset representative of a generator-coordinate row vector.
    Matrix canonical_rep(const Matrix& v) const;
    bool elements_equal(const Matrix& a, const Matrix& b) const;
    bool element_is_zero(const Matrix& v) const;
    // All elements as canonical representatives; requires cardinality below
    // the enumeration cap.
    std::vector<Matrix> elements() const;

    const Resolution& resolution() const;

    // Same underlying data object (used for strict source/target identity).
    bool same_object(const FPModule& o) const { return d_ == o.d_; }
    const void* id() const { return d_.get(); }

private:
    std::shared_ptr<const detail::ModuleData> d_;
};

std::vector<i64> canonical_form(const FPModule& m);
bool is_isomorphic(const FPModule& a, const FPModule& b);

class ModuleMorphism {
public:
    ModuleMorphism() = default;
    // action: generators(source) x generators(target); checked to map the
    // source relations into the target relation span.
    ModuleMorphism(FPModule source, FPModule target, Matrix action);

    static ModuleMorphism zero(const FPModule& source, const FPModule& target);
    static ModuleMorphism identity(const FPModule& m);

    const FPModule& source() const { return source_; }
    const FPModule& target() const { return target_; }
    const Matrix& action() const { return action_; }

    Matrix apply(const Matrix& v) const { return target_.canonical_rep(v * action_); }
    ModuleMorphism then(const ModuleMorphism& next) const;
    ModuleMorphism plus(const ModuleMorphism& other) const;
    ModuleMorphism negated() const;

    bool is_zero_morphism() const;
    bool equals(const ModuleMorphism& o) const;

private:
    FPModule source_, target_;
    Matrix action_;
};

bool is_monic(const ModuleMorphism& f);
bool is_epic(const ModuleMorphism& f);
// Two-sided inverse of an isomorphism (solved modulo the presentations).
ModuleMorphism inverse_of_iso(const ModuleMorphism& f);
// Elementwise reference implementations, kept for cross-checking the
// normal-form paths on small modules.
bool is_monic_elementwise(const ModuleMorphism& f);
bool is_epic_elementwise(const ModuleMorphism& f);

// Subquotient span(k_gens)/span(i_gens) of a free ambient row space; the
// workhorse behind kernels, images, homology and hom-modules.
struct Subquotient {
    FPModule module;
    Matrix k_gens;  // rows span the numerator (must contain span of i_gens)
    Matrix i_gens;  // rows span the denominator

    // Coordinates of an ambient vector lying in span(k_gens) (mod i_gens).
    Matrix coords_of(const Matrix& ambient_rows) const;
    // Ambient representative of coordinate rows.
    Matrix lift(const Matrix& coords) const;
    bool contains_ambient(const Matrix& v) const;
};

Subquotient make_subquotient(const Ring& ring, int ambient, Matrix k_gens, Matrix i_gens);

struct KernelResult {
    FPModule module;
    ModuleMorphism inclusion;  // module -> source of f
    Subquotient sq;            // ambient = generator space of source
};

KernelResult kernel(const ModuleMorphism& f);

struct CokernelResult {
    FPModule module;
    ModuleMorphism projection;  // target of f -> module
};

CokernelResult cokernel(const ModuleMorphism& f);

// Image of f as a subobject of the target.
struct ImageResult {
    FPModule module;
    ModuleMorphism inclusion;  // module -> target of f
    Subquotient sq;
};

ImageResult image(const ModuleMorphism& f);

// Exactness of a -> b -> c at b (image of first = kernel of second).
bool is_exact_pair(const ModuleMorphism& f, const ModuleMorphism& g);

struct DirectSum {
    FPModule module;
    std::vector<ModuleMorphism> injections;
    std::vector<ModuleMorphism> projections;
};

DirectSum direct_sum(const std::vector<FPModule>& parts);
// The universal map out of a sum (componentwise rows stacked).
ModuleMorphism sum_map(const DirectSum& ds, const std::vector<ModuleMorphism>& legs);
// The universal map into a product (= the same biproduct).
ModuleMorphism product_map(const DirectSum& ds, const std::vector<ModuleMorphism>& legs);

struct PushoutResult {
    FPModule module;
    ModuleMorphism from_b;  // leg B -> P
    ModuleMorphism from_c;  // leg C -> P
};

// Pushout of B <-f- A -g-> C, i.e. coker(A -> B ⊕ C, a |-> (f a, -g a)).
PushoutResult pushout(const ModuleMorphism& f, const ModuleMorphism& g);

struct PullbackResult {
    FPModule module;
    ModuleMorphism to_b;
    ModuleMorphism to_c;
};

// Pullback of B -f-> A <-g- C, i.e. ker(B ⊕ C -> A).
PullbackResult pullback(const ModuleMorphism& f, const ModuleMorphism& g);

struct ShortExactSequence {
    FPModule left, mid, right;
    ModuleMorphism inj;   // left -> mid
    ModuleMorphism surj;  // mid -> right

    // Construction-time validation: inj monic, surj epic, im(inj) = ker(surj).
    static ShortExactSequence checked(ModuleMorphism inj, ModuleMorphism surj);
};

ShortExactSequence split_ses(const FPModule& left, const FPModule& right);

// Functor from the n-cube (or a punctured n-cube) to modules. Vertices are
// bitmasks; edges flip one bit upward.
class CubeDiagram {
public:
    CubeDiagram(int arity, Ring ring);

    int arity() const { return arity_; }
    int vertex_count() const { return 1 << arity_; }
    void set_vertex(int mask, FPModule m);
    void set_edge(int from_mask, int axis, ModuleMorphism f);
    void set_puncture(int mask);  // all-ones or all-zeros only

    const FPModule& vertex(int mask) const;
    const ModuleMorphism& edge(int from_mask, int axis) const;
    bool has_vertex(int mask) const;
    std::optional<int> puncture() const { return puncture_; }

    // Checks commutativity of all square faces avoiding the puncture.
    void validate() const;

private:
    int arity_;
    Ring ring_;
    std::vector<std::optional<FPModule>> vertices_;
    std::map<std::pair<int, int>, ModuleMorphism> edges_;
    std::optional<int> puncture_;
};

struct CubeColimit {
    FPModule module;
    std::vector<ModuleMorphism> legs;  // indexed by vertex mask; empty at puncture
    DirectSum sum;                     // over non-punctured vertices, mask order
    std::vector<int> vertex_order;
    CokernelResult coker;
    // Universal map induced by a compatible cocone.
    ModuleMorphism induced(const std::vector<ModuleMorphism>& cocone, const FPModule& target) const;
};

CubeColimit cube_colimit(const CubeDiagram& d);

struct CubeLimit {
    FPModule module;
    std::vector<ModuleMorphism> legs;  // module -> vertex, indexed by mask
    Subquotient sq;                    // inside the direct sum of vertices
    DirectSum sum;
    std::vector<int> vertex_order;
    ModuleMorphism induced(const std::vector<ModuleMorphism>& cone, const FPModule& source) const;
};

CubeLimit cube_limit(const CubeDiagram& d);

// Canonical four-term data of the cached free resolution
// f3 -d3-> f2 -d2-> f1 -d1-> f0 -aug-> M -> 0, plus the first syzygy.
struct Resolution {
    FPModule f0, f1, f2, f3;
    ModuleMorphism aug;       // f0 -> M
    ModuleMorphism d1, d2, d3;
    FPModule syzygy;          // ker(aug)
    ModuleMorphism syzygy_inclusion;  // syzygy -> f0
    ModuleMorphism f1_cover;          // f1 -> syzygy (epic)
};

// 0 -> X -> Y -> D -> 0 realized from a morphism cls : syzygy(D) -> X by
// pushing the syzygy inclusion out along cls.
ShortExactSequence realize_extension(const FPModule& d, const FPModule& x, const ModuleMorphism& cls);

// Element enumeration table (brute-force oracle helper).
struct ElementTable {
    FPModule module;
    std::vector<Matrix> elems;  // canonical representatives
    int index_of(const Matrix& v) const;
};

ElementTable element_table(const FPModule& m);

// A morphism of short exact sequences: three vertical maps with commuting
// squares (validated).
struct SesMorphism {
    ShortExactSequence top, bottom;
    ModuleMorphism left, mid, right;

    static SesMorphism checked(ShortExactSequence top, ShortExactSequence bottom,
                               ModuleMorphism left, ModuleMorphism mid, ModuleMorphism right);
};

// The six-term snake sequence
// ker(left) -> ker(mid) -> ker(right) -δ-> coker(left) -> coker(mid) -> coker(right)
// with the connecting morphism constructed by lift-push-pull on generators.
struct SnakeSequence {
    KernelResult ker_left, ker_mid, ker_right;
    CokernelResult coker_left, coker_mid, coker_right;
    ModuleMorphism k1, k2;        // kernel row
    ModuleMorphism connecting;    // ker(right) -> coker(left)
    ModuleMorphism c1, c2;        // cokernel row
    bool exact() const;
};

SnakeSequence snake_sequence(const SesMorphism& sm);

}  // namespace cotlab
