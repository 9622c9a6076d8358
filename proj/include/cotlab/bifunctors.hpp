#pragma once

// Tensor, internal Hom, Ext, the n-fold tensor as an n-variable left adjoint
// with its right adjoints, and base change along ring surjections Z/m -> Z/n.

#include <memory>
#include <string>
#include <vector>

#include "cotlab/module_cat.hpp"

namespace cotlab {

// Kronecker presentation: generators are pairs (row-major), relations are
// rel(a)⊗gen(b) together with gen(a)⊗rel(b). Right exact in each variable.
FPModule tensor(const FPModule& a, const FPModule& b);
ModuleMorphism tensor_map(const ModuleMorphism& f, const ModuleMorphism& g);

// The module of all morphisms a -> b with conversion between hom-module
// coordinates and concrete morphisms.
struct HomModule {
    FPModule module;
    FPModule source, target;
    Subquotient sq;  // ambient = flattened action matrices

    ModuleMorphism to_morphism(const Matrix& coords) const;
    Matrix coords_of(const ModuleMorphism& f) const;
    std::vector<ModuleMorphism> all_morphisms() const;
};

HomModule hom_module(const FPModule& a, const FPModule& b);

// Hom(pre, post): Hom(a, b) -> Hom(a', b'), f |-> pre∘f∘post,
// for pre: a' -> a (contravariant slot) and post: b -> b'.
ModuleMorphism hom_map(const HomModule& from, const HomModule& to, const ModuleMorphism& pre,
                       const ModuleMorphism& post);

// Ext^k(a, b) for k in {1, 2} as H^k of Hom(F•, b) over the cached free
// resolution of a.
FPModule ext(int k, const FPModule& a, const FPModule& b);

// Ext^1 with explicit class representatives in Hom(syzygy(a), b) modulo the
// restrictions of Hom(f0, b); canonical coset representatives come from the
// subquotient normal form.
struct Ext1Classes {
    FPModule module;
    FPModule syzygy;
    HomModule hom_syz;
    Subquotient sq;  // inside the flattened syzygy->b matrix space

    ModuleMorphism class_rep(const Matrix& coords) const;
    std::vector<ModuleMorphism> all_class_reps() const;
};

Ext1Classes ext1_classes(const FPModule& a, const FPModule& b);

// Realize every extension class 0 -> x -> Y -> d -> 0.
std::vector<ShortExactSequence> all_extensions(const FPModule& d, const FPModule& x);

// An n-variable left adjoint F with right adjoints G^j and explicit transpose
// witnesses. Slots are 0-indexed; `others` lists run over slots != j in
// ascending order.
class MultiAdjunction {
public:
    virtual ~MultiAdjunction() = default;

    virtual int arity() const = 0;
    virtual std::string name() const = 0;
    virtual Ring slot_ring(int i) const = 0;
    virtual Ring result_ring() const = 0;

    virtual FPModule apply(const std::vector<FPModule>& slots) const = 0;
    virtual ModuleMorphism map(const std::vector<ModuleMorphism>& maps) const = 0;

    virtual FPModule adjoint(int j, const std::vector<FPModule>& others,
                             const FPModule& a0) const = 0;
    // Contravariant in the others, covariant in the last argument:
    // G^j(f_i : A_i -> B_i ; g0 : A0 -> B0) : G^j(B..,A0) -> G^j(A..,B0).
    virtual ModuleMorphism adjoint_map(int j, const std::vector<ModuleMorphism>& others,
                                       const ModuleMorphism& g0) const = 0;

    // Hom(F(slots), a0) ≅ Hom(slots[j], G^j(...)); mutually inverse bijections.
    virtual ModuleMorphism transpose(int j, const std::vector<FPModule>& slots,
                                     const FPModule& a0, const ModuleMorphism& phi) const = 0;
    virtual ModuleMorphism untranspose(int j, const std::vector<FPModule>& slots,
                                       const FPModule& a0, const ModuleMorphism& psi) const = 0;
};

using AdjunctionPtr = std::shared_ptr<const MultiAdjunction>;

AdjunctionPtr tensor_adjunction(const Ring& ring, int arity);
AdjunctionPtr identity_adjunction(const Ring& ring);
// Fix one slot of an n-variable adjunction (n >= 2).
AdjunctionPtr restrict_adjunction(AdjunctionPtr base, int slot, FPModule fixed);

// Extension of scalars -⊗_{Z/m} Z/n with its right adjoint restriction,
// for n | m.
struct BaseChangePair {
    Ring from;  // Z/m
    Ring to;    // Z/n
    AdjunctionPtr adjunction;

    FPModule extend(const FPModule& a) const { return adjunction->apply({a}); }
    ModuleMorphism extend_map(const ModuleMorphism& f) const { return adjunction->map({f}); }
    FPModule restriction(const FPModule& b) const { return adjunction->adjoint(0, {}, b); }
    ModuleMorphism restriction_map(const ModuleMorphism& g) const {
        return adjunction->adjoint_map(0, {}, g);
    }
};

BaseChangePair base_change(i64 m, i64 n);

}  // namespace cotlab
