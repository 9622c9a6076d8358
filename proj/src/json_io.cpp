#include "cotlab/json_io.hpp"

namespace cotlab {

Json to_json(const Matrix& m) {
    return Json{{"ring", m.ring().modulus()},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", m.entries()}};
}

Matrix matrix_from_json(const Json& j) {
    Ring ring(j.at("ring").get<i64>());
    return Matrix(ring, j.at("rows").get<int>(), j.at("cols").get<int>(),
                  j.at("entries").get<std::vector<i64>>());
}

Json to_json(const FPModule& m) {
    return Json{{"ring", m.ring().modulus()}, {"presentation", to_json(m.presentation())},
                {"invariants", m.invariants()}};
}

FPModule module_from_json(const Json& j) {
    Ring ring(j.at("ring").get<i64>());
    if (j.contains("presentation"))
        return FPModule(ring, matrix_from_json(j.at("presentation")));
    return FPModule::from_invariants(ring, j.at("invariants").get<std::vector<i64>>());
}

Json to_json(const ModuleMorphism& f) {
    return Json{{"source", to_json(f.source())},
                {"target", to_json(f.target())},
                {"matrix", to_json(f.action())}};
}

ModuleMorphism morphism_from_json(const Json& j) {
    return ModuleMorphism(module_from_json(j.at("source")), module_from_json(j.at("target")),
                          matrix_from_json(j.at("matrix")));
}

Json to_json(const ShortExactSequence& s) {
    return Json{{"left", to_json(s.left)},
                {"mid", to_json(s.mid)},
                {"right", to_json(s.right)},
                {"inj", to_json(s.inj.action())},
                {"surj", to_json(s.surj.action())}};
}

ShortExactSequence ses_from_json(const Json& j) {
    FPModule left = module_from_json(j.at("left"));
    FPModule mid = module_from_json(j.at("mid"));
    FPModule right = module_from_json(j.at("right"));
    ModuleMorphism inj(left, mid, matrix_from_json(j.at("inj")));
    ModuleMorphism surj(mid, right, matrix_from_json(j.at("surj")));
    return ShortExactSequence::checked(inj, surj);
}

Json to_json(const ChainComplex& c) {
    Json mods = Json::array();
    Json diffs = Json::array();
    for (int n = c.lo(); n <= c.hi(); ++n) mods.push_back(to_json(c.module_at(n)));
    for (int n = c.lo(); n < c.hi(); ++n) diffs.push_back(to_json(c.diff_at(n).action()));
    return Json{{"ring", c.ring().modulus()}, {"lo", c.lo()}, {"modules", mods},
                {"differentials", diffs}};
}

ChainComplex complex_from_json(const Json& j) {
    Ring ring(j.at("ring").get<i64>());
    std::vector<FPModule> mods;
    for (const auto& m : j.at("modules")) mods.push_back(module_from_json(m));
    std::vector<ModuleMorphism> diffs;
    const auto& dj = j.at("differentials");
    for (size_t i = 0; i + 1 < mods.size(); ++i)
        diffs.emplace_back(mods[i], mods[i + 1], matrix_from_json(dj.at(i)));
    return ChainComplex::checked(ring, j.at("lo").get<int>(), std::move(mods), std::move(diffs));
}

Json to_json(const CotorsionReport& r) {
    return Json{{"d", r.d_label},
                {"e", r.e_label},
                {"ring", r.modulus},
                {"max_factors", r.max_factors},
                {"is_pair", r.is_pair},
                {"enough_injectives", r.has_enough_injectives},
                {"enough_projectives", r.has_enough_projectives},
                {"complete", r.complete},
                {"ext2_vanishes", r.ext2_vanishes},
                {"resolving", r.resolving},
                {"coresolving", r.coresolving},
                {"hereditary", r.hereditary},
                {"witnesses", r.witnesses}};
}

namespace {

Json split_to_json(const SplitReport& s) {
    return Json{{"condition", s.condition}, {"pass", s.pass},
                {"counterexamples", s.counterexamples}};
}

}  // namespace

Json to_json(const Split1VarReport& r) {
    return Json{{"ok", r.ok},
                {"precondition_failure", r.precondition_failure},
                {"conditions", Json::array({split_to_json(r.c1a), split_to_json(r.c1b),
                                            split_to_json(r.c2a), split_to_json(r.c2b)})},
                {"left_holds", r.ok && r.left_holds()},
                {"right_holds", r.ok && r.right_holds()},
                {"equivalence_holds", r.equivalence_holds}};
}

Json to_json(const NSplitReport& r) {
    Json zero = Json::array(), g = Json::array();
    for (const auto& s : r.zero_side) zero.push_back(split_to_json(s));
    for (const auto& s : r.g_side) g.push_back(split_to_json(s));
    return Json{{"ok", r.ok},
                {"precondition_failure", r.precondition_failure},
                {"zero_side", zero},
                {"g_side", g},
                {"left_holds", r.ok && r.left_holds()},
                {"right_holds", r.ok && r.right_holds()},
                {"equivalence_holds", r.equivalence_holds}};
}

Json to_json(const CornerMapReport& r) {
    return Json{{"ok", r.ok},
                {"precondition_failure", r.precondition_failure},
                {"monic", r.monic},
                {"coker_iso", r.coker_iso}};
}

Json to_json(const QuillenReport& r) {
    return Json{{"ok", r.ok},
                {"precondition_failure", r.precondition_failure},
                {"lifted_exactness", r.lifted_exactness},
                {"preserves_tilde", r.preserves_tilde},
                {"preserves_dg", r.preserves_dg},
                {"ses_samples", r.ses_samples},
                {"tilde_samples", r.tilde_samples},
                {"dg_samples", r.dg_samples},
                {"counterexamples", r.counterexamples}};
}

Json to_json(const LemmaReport& r) {
    return Json{{"lemma", r.lemma},
                {"trials", r.trials},
                {"failures", r.failures},
                {"counterexamples", r.counterexamples},
                {"pass", r.pass()}};
}

}  // namespace cotlab
