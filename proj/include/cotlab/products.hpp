#pragma once

// Pushout and pullback products over punctured cubes, split-condition
// checkers in one and n variables, and the Quillen-criterion verifiers.
// Checkers never produce vacuous passes: when a precondition fails they
// refuse to run (ok = false with a precondition message).

#include <string>
#include <vector>

#include "cotlab/complexes.hpp"

namespace cotlab {

// Runtime guard for cube constructions.
inline constexpr int kMaxCubeArity = 5;

struct PushoutProduct {
    ModuleMorphism map;        // colim over the punctured cube -> F(B_1..B_n)
    CubeColimit colimit;
    std::vector<ModuleMorphism> cokernels;  // cokernel projections of the f_i
};

// □_F(f_1,...,f_n) built by applying F to the whole cube and taking the
// colimit over the cube punctured at (1,...,1).
PushoutProduct pushout_product(const AdjunctionPtr& ma, const std::vector<ModuleMorphism>& fs);

struct PullbackProduct {
    ModuleMorphism map;  // G^j(B_1,..ĵ..,B_n, A_0) -> lim over the punctured cube
    CubeLimit limit;
};

// ■_{G^j}(f_1,..ĵ..,f_n; f_0): the dual construction via the cube punctured
// at (0,...,0); contravariant slots use sources/targets reversed.
PullbackProduct pullback_product(const AdjunctionPtr& ma, int j,
                                 const std::vector<ModuleMorphism>& others,
                                 const ModuleMorphism& f0);

// coker(□_F f_i) ≅ F(C_1,...,C_n) plus the auxiliary exact tail
// F(B_1,..,B_{n-1},A_n) -> colim -> colim(.., 0->C_n) -> 0.
bool verify_coker_formula(const AdjunctionPtr& ma, const std::vector<ModuleMorphism>& fs,
                          std::string* detail = nullptr);

struct SplitReport {
    std::string condition;  // "1a", "1b", "2a", "2b", "0a_k", "0b", "ja_0", "ja_k", "jb"
    bool pass = true;
    std::vector<std::string> counterexamples;
};

struct Split1VarReport {
    bool ok = false;  // precondition (verified pairs) held and checks ran
    std::string precondition_failure;
    SplitReport c1a, c1b, c2a, c2b;
    bool equivalence_holds = false;  // (1a ∧ 1b) <=> (2a ∧ 2b)
    bool left_holds() const { return c1a.pass && c1b.pass; }
    bool right_holds() const { return c2a.pass && c2b.pass; }
};

// (1a) D is F-right split, (1b) F(D) ⊆ D', (2a) E' is G-left split,
// (2b) G(E') ⊆ E; all SES quantifiers discharged through realize_extension.
Split1VarReport check_split_1var(const AdjunctionPtr& adj, const ClassSpec& d, const ClassSpec& e,
                                 const ClassSpec& d2, const ClassSpec& e2, const Universe& u,
                                 const Universe& u2, bool skip_pair_check = false);

struct NSplitReport {
    bool ok = false;
    std::string precondition_failure;
    std::vector<SplitReport> zero_side;  // (0a_k) for each k, then (0b)
    std::vector<SplitReport> g_side;     // (ja_0), (ja_k), (jb) for each j
    bool equivalence_holds = false;
    bool left_holds() const;
    bool right_holds() const;
};

// Prop.-style n-variable split duality over per-slot pairs and universes.
NSplitReport check_nsplit_duality(const AdjunctionPtr& ma,
                                  const std::vector<ClassSpec>& d_classes,
                                  const std::vector<ClassSpec>& e_classes,
                                  const std::vector<Universe>& universes,
                                  const ClassSpec& d0, const ClassSpec& e0, const Universe& u0,
                                  bool skip_pair_check = false);

struct CornerMapReport {
    bool ok = false;  // preconditions verified
    std::string precondition_failure;
    bool monic = false;
    bool coker_iso = false;
};

// Monicity of the pushout product of monos with D-cokernels plus the
// cokernel formula; refuses to run when the (0a)/(0b) conditions fail.
CornerMapReport check_corner_map(const AdjunctionPtr& ma, const std::vector<ClassSpec>& d_classes,
                               const std::vector<ClassSpec>& e_classes,
                               const std::vector<Universe>& universes, const ClassSpec& d0,
                               const ClassSpec& e0, const Universe& u0,
                               const std::vector<ModuleMorphism>& fs);

struct QuillenReport {
    bool ok = false;
    std::string precondition_failure;
    bool lifted_exactness = false;   // SES with tilde-D cokernel stay exact
    bool preserves_tilde = false;    // image of tilde complexes is tilde
    bool preserves_dg = false;       // image of dg complexes is dg (entrywise)
    int ses_samples = 0;
    int tilde_samples = 0;
    int dg_samples = 0;
    std::vector<std::string> counterexamples;
    bool all_pass() const { return ok && lifted_exactness && preserves_tilde && preserves_dg; }
};

// Three lifted conditions of the 1-variable Quillen criterion on seeded
// complex samples; requires check_split_1var to pass first.
QuillenReport check_quillen_1var(const AdjunctionPtr& adj, const ClassSpec& d, const ClassSpec& e,
                                 const ClassSpec& d2, const ClassSpec& e2, const Universe& u,
                                 const Universe& u2, Rng rng, int samples);

// The three proof conditions of the n-variable criterion for Ch(F) on seeded
// samples; requires check_nsplit_duality to pass first.
QuillenReport check_cot_main(const AdjunctionPtr& ma, const std::vector<ClassSpec>& d_classes,
                             const std::vector<ClassSpec>& e_classes,
                             const std::vector<Universe>& universes, const ClassSpec& d0,
                             const ClassSpec& e0, const Universe& u0, Rng rng, int samples);

// --- lemma verifiers (seeded trial batteries; parallel over trials) ---

struct LemmaReport {
    std::string lemma;
    int trials = 0;
    int failures = 0;
    std::vector<std::string> counterexamples;
    bool pass() const { return failures == 0; }
};

// coker(□_F f_i) ≅ F(C_i) on random morphism tuples.
LemmaReport verify_lemma_coker_pushout(const Ring& ring, int arity, std::uint64_t seed, int trials);
// □_{F(-,X)}(f_1..f_{n-1}) ≅ □_F(f_1..f_{n-1}, 0->X) with equal composites.
LemmaReport verify_lemma_pp_restriction(const Ring& ring, int arity, std::uint64_t seed,
                                        int trials);
// The pushout-product square is a pushout.
LemmaReport verify_lemma_pp_square(const Ring& ring, int arity, std::uint64_t seed, int trials);
// Hom(colim.., A0) ≅ Hom(B_j, lim..) by cardinality and explicit transpose.
LemmaReport verify_lemma_pp_adjunction(const Ring& ring, int arity, std::uint64_t seed, int trials);
// Pullback-product surjectivity of Hom for (D-cokernel, E-kernel) SES pairs.
LemmaReport verify_lemma_hom_left_split(const Ring& ring, int max_factors);
// Tensoring an SES with flat cokernel preserves exactness (every X in u).
LemmaReport verify_lemma_flat_split(const Ring& ring, int max_factors);
// Finite direct sums of SES with D-cokernels stay exact with D-cokernel;
// dually for products with E-kernels.
LemmaReport verify_lemma_exact_sums(const Ring& ring, std::uint64_t seed, int trials);

// Contrapositive probe for the converse criterion: inject a broken class and
// observe that at least one Quillen-report condition fails on samples.
LemmaReport verify_corner_converse(const Ring& ring, std::uint64_t seed, int trials);

}  // namespace cotlab
