#pragma once

// Finitely supported cochain complexes (differentials raise degree), sphere
// and disc constructors, homology, homotopy solving, class membership, and
// total complexes of functor lifts. Complexes outside their support interval
// are zero; unbounded complexes are unrepresentable by construction.

#include <optional>

#include "cotlab/cotorsion.hpp"
#include "cotlab/rng.hpp"

namespace cotlab {

class ChainComplex {
public:
    ChainComplex() = default;
    // modules[i] sits in degree lo + i; diffs[i] : modules[i] -> modules[i+1].
    // Validates d∘d = 0.
    static ChainComplex checked(Ring ring, int lo, std::vector<FPModule> modules,
                                std::vector<ModuleMorphism> diffs);
    static ChainComplex zero_complex(const Ring& ring);

    const Ring& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(mods_.size()) - 1; }
    bool in_support(int n) const { return n >= lo_ && n <= hi(); }
    int length() const { return static_cast<int>(mods_.size()); }

    const FPModule& module_at(int n) const;
    // The differential leaving degree n (zero morphism outside the support).
    ModuleMorphism diff_at(int n) const;

    ChainComplex padded_to(int lo, int hi) const;
    ChainComplex pruned() const;  // drop zero modules at both ends

    bool is_zero() const;

private:
    Ring ring_;
    int lo_ = 0;
    std::vector<FPModule> mods_;
    std::vector<ModuleMorphism> diffs_;
};

enum class ElementaryKind { Sphere, Disc };

// S^n(A): A concentrated in degree n. D^n(A): A in degrees n and n+1 with the
// identity differential.
ChainComplex elementary_complex(ElementaryKind kind, int n, const FPModule& a);

ChainComplex direct_sum_complex(const std::vector<ChainComplex>& parts);

struct HomologyData {
    FPModule cycles, boundaries, homology;
};

HomologyData homology(const ChainComplex& c, int n);
bool is_exact_complex(const ChainComplex& c);

class ChainMap {
public:
    ChainMap() = default;
    // Components over the union support; validated to commute with the
    // differentials.
    static ChainMap checked(ChainComplex source, ChainComplex target,
                            std::vector<ModuleMorphism> parts, int lo);
    static ChainMap zero_map(const ChainComplex& source, const ChainComplex& target);
    static ChainMap identity(const ChainComplex& c);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    ModuleMorphism at(int n) const;
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(parts_.size()) - 1; }

    bool is_zero_map() const;
    bool equals(const ChainMap& o) const;

private:
    ChainComplex source_, target_;
    std::vector<ModuleMorphism> parts_;
    int lo_ = 0;
};

// Degreewise maps s^n : source^n -> target^{n-1} with ds + sd = f.
struct Homotopy {
    std::vector<ModuleMorphism> maps;
    int lo = 0;
};

// Solves the homotopy equations as one linear system over Z/nZ; a miss is a
// certificate that no homotopy exists.
std::optional<Homotopy> null_homotopy(const ChainMap& f);

// All chain maps source -> target, enumerated by solving the commuting-square
// system degreewise and closing the solution group.
std::vector<ChainMap> all_chain_maps(const ChainComplex& source, const ChainComplex& target);

struct ComplexClassification {
    bool entrywise_in_d = false;
    bool exact = false;
    bool cycles_in_d = false;
    bool is_tilde_d = false;
    bool is_dg_d = false;  // entrywise for finitely supported complexes
    bool entrywise_in_e = false;
    bool cycles_in_e = false;
    bool is_tilde_e = false;
    bool is_dg_e = false;
};

ComplexClassification classify(const ChainComplex& c, const ClassSpec& d, const ClassSpec& e,
                               const Universe& u);

// Lemma-style criterion: exact everywhere and Ext^1(c^n/B^n, E) = 0 for all
// E in the universe part of the right class; agrees with classify().is_tilde_d.
bool tilde_criterion_check(const ChainComplex& c, const ClassSpec& d, const ClassSpec& e,
                           const Universe& u);

// Commuting multicomplex on a finite box; signs enter only when totalizing.
class MultiComplex {
public:
    MultiComplex(int arity, Ring ring, std::vector<int> lo, std::vector<int> hi);

    int arity() const { return arity_; }
    const Ring& ring() const { return ring_; }
    const std::vector<int>& lo() const { return lo_; }
    const std::vector<int>& hi() const { return hi_; }

    void set_module(const std::vector<int>& idx, FPModule m);
    void set_diff(const std::vector<int>& idx, int axis, ModuleMorphism f);
    const FPModule& module(const std::vector<int>& idx) const;
    const ModuleMorphism& diff(const std::vector<int>& idx, int axis) const;

    // d_k squares to zero and the directional differentials commute.
    void validate() const;

    // All indices in the box, ascending lexicographic.
    std::vector<std::vector<int>> all_indices() const;

private:
    size_t flat(const std::vector<int>& idx) const;
    int arity_;
    Ring ring_;
    std::vector<int> lo_, hi_;
    std::vector<std::optional<FPModule>> mods_;
    std::vector<std::optional<ModuleMorphism>> diffs_;  // arity per cell
};

enum class TotalFlavor { Sum, Product };

// Total complex with the sign convention (-1)^(α_1+...+α_{k-1}) on the k-th
// directional differential; d∘d = 0 is asserted during construction.
ChainComplex total_complex(const MultiComplex& mc, TotalFlavor flavor);

// Both flavors coincide for finite support up to the canonical degreewise
// permutation; returns whether that permutation is a chain isomorphism.
bool total_flavors_agree(const MultiComplex& mc);

// C^α = F(A_1^{α_1}, ..., A_n^{α_n}).
MultiComplex lift_functor(const AdjunctionPtr& ma, const std::vector<ChainComplex>& inputs);
ChainComplex lift_functor_total(const AdjunctionPtr& ma, const std::vector<ChainComplex>& inputs);

// D^α = G^j(A_1^{-α_1}, ..ĵ.., A_n^{-α_n}, A_0^{α_0}) (reversed indexing in
// the contravariant slots); totalized with the Product flavor by convention.
MultiComplex lift_adjoint(const AdjunctionPtr& ma, int j, const std::vector<ChainComplex>& others,
                          const ChainComplex& a0);
ChainComplex lift_adjoint_total(const AdjunctionPtr& ma, int j,
                                const std::vector<ChainComplex>& others, const ChainComplex& a0);

// A degreewise short exact sequence of complexes with chain-map legs.
struct ComplexSES {
    ChainComplex sub, mid, quot;
    ChainMap inj, surj;

    static ComplexSES checked(ChainComplex sub, ChainComplex mid, ChainComplex quot, ChainMap inj,
                              ChainMap surj);
};

// 0 -> x -> y -> D^n(M) -> 0 realized from an Ext^1(M, x^n) class; the middle
// differs from x only in degrees n and n+1 (extension middle and pushout).
ComplexSES disc_extension(const ChainComplex& x, int n, const FPModule& m,
                          const ModuleMorphism& cls);

// 0 -> x -> y -> S^n(M) -> 0 when the differential extends over the chosen
// extension middle; nullopt when the class does not lift.
std::optional<ComplexSES> sphere_extension(const ChainComplex& x, int n, const FPModule& m,
                                           const ModuleMorphism& cls);

// Degreewise split twisted extension 0 -> a -> a⊕d -> d -> 0 with a seeded
// anti-chain-map twist phi: d^i -> a^{i+1}.
ComplexSES twisted_split_extension(const ChainComplex& a, const ChainComplex& d, Rng& rng);

// Sequence of total complexes obtained by applying an n-variable functor to a
// SES in one slot (fixed complexes elsewhere); exactness is NOT assumed.
struct LiftedSequence {
    ChainComplex sub, mid, quot;
    ChainMap inj, surj;
};

LiftedSequence lift_ses(const AdjunctionPtr& ma, int slot, const ComplexSES& s,
                        const std::vector<ChainComplex>& others);

// Degreewise exactness of 0 -> sub -> mid -> quot -> 0.
bool is_exact_sequence(const ChainComplex& sub, const ChainComplex& mid, const ChainComplex& quot,
                       const ChainMap& inj, const ChainMap& surj);

// --- seeded complex samplers (shared by the Quillen checkers) ---

// Spheres, discs and random short entrywise-cls complexes over the universe.
std::vector<ChainComplex> sample_entrywise_complexes(const ClassSpec& cls, const Universe& u,
                                                     Rng& rng, int count, int max_len);
// Exact complexes with cycles in cls: disc sums, basis twists and splices.
std::vector<ChainComplex> sample_tilde_complexes(const ClassSpec& cls, const Universe& u, Rng& rng,
                                                 int count, int max_len);
// SES of complexes with cokernel entrywise in cls (sphere/disc/twisted).
std::vector<ComplexSES> sample_ses_with_dg_cokernel(const ClassSpec& cls, const Universe& u,
                                                    Rng& rng, int count);
// SES of complexes with cokernel in the tilde class of cls.
std::vector<ComplexSES> sample_ses_with_tilde_cokernel(const ClassSpec& cls, const Universe& u,
                                                       Rng& rng, int count);

}  // namespace cotlab
