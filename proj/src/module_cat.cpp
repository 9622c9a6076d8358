#include "cotlab/module_cat.hpp"

#include <algorithm>
#include <cstdlib>

#include "cotlab/linear_system.hpp"

namespace cotlab {

ModuleConfig& module_config() {
    static ModuleConfig cfg = [] {
        ModuleConfig c;
        if (const char* env = std::getenv("COTLAB_MAX_CARD")) {
            i64 v = std::atoll(env);
            if (v > 0) c.max_enumeration = v;
        }
        return c;
    }();
    return cfg;
}

FPModule::FPModule(Ring ring, Matrix presentation) {
    require(presentation.ring() == ring, "presentation ring mismatch");
    auto d = std::make_shared<detail::ModuleData>();
    d->ring = ring;
    d->presentation = presentation;
    const i64 n = ring.modulus();
    SmithResult sm = smith_form(presentation);
    int gens = presentation.cols();
    d->gen_divisors.assign(gens, n);
    for (size_t j = 0; j < sm.diag.size(); ++j)
        d->gen_divisors[j] = sm.diag[j] == 0 ? n : sm.diag[j];
    for (i64 e : d->gen_divisors)
        if (e != 1) d->invariants.push_back(e);
    d->cardinality = 1;
    for (i64 e : d->gen_divisors) {
        d->cardinality *= e;
        if (d->cardinality > (i64(1) << 62) / (n + 1)) d->cardinality = i64(1) << 62;
    }
    d->coord = sm.r;
    d->coord_inv = inverse_of(sm.r);
    d_ = std::move(d);
}

FPModule FPModule::zero(const Ring& ring) { return FPModule(ring, Matrix::zero(ring, 0, 0)); }

FPModule FPModule::free_module(const Ring& ring, int rank) {
    return FPModule(ring, Matrix::zero(ring, 0, rank));
}

FPModule FPModule::cyclic(const Ring& ring, i64 order) {
    require(order >= 1 && ring.modulus() % order == 0, "cyclic order must divide the modulus");
    if (order == 1) return zero(ring);
    Matrix p(ring, 1, 1);
    p.set(0, 0, order);  // Z/n / (order) = Z/order; order = n gives the free module
    return FPModule(ring, p);
}

FPModule FPModule::from_invariants(const Ring& ring, const std::vector<i64>& invs) {
    int k = static_cast<int>(invs.size());
    Matrix p(ring, k, k);
    for (int j = 0; j < k; ++j) {
        require(invs[j] > 1 && ring.modulus() % invs[j] == 0, "invariant must be a divisor > 1");
        p.set(j, j, invs[j]);
    }
    return FPModule(ring, p);
}

bool FPModule::is_free() const {
    const i64 n = ring().modulus();
    return std::all_of(invariants().begin(), invariants().end(), [&](i64 e) { return e == n; });
}

Matrix FPModule::canonical_rep(const Matrix& v) const {
    require(v.cols() == generators(), "element width mismatch");
    Matrix w = v * d_->coord;
    Matrix red(ring(), w.rows(), w.cols());
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j) red.set(i, j, w.at(i, j) % d_->gen_divisors[j]);
    return red * d_->coord_inv;
}

bool FPModule::elements_equal(const Matrix& a, const Matrix& b) const {
    return canonical_rep(a) == canonical_rep(b);
}

bool FPModule::element_is_zero(const Matrix& v) const { return canonical_rep(v).is_zero(); }

std::vector<Matrix> FPModule::elements() const {
    require(cardinality() <= module_config().max_enumeration,
            "module too large for element enumeration");
    std::vector<Matrix> out;
    int g = generators();
    std::vector<i64> w(g, 0);
    for (;;) {
        Matrix wm(ring(), 1, g, std::vector<i64>(w.begin(), w.end()));
        out.push_back(wm * d_->coord_inv);
        int j = 0;
        for (; j < g; ++j) {
            if (++w[j] < d_->gen_divisors[j]) break;
            w[j] = 0;
        }
        if (j == g) break;
    }
    if (g == 0) { /* single empty tuple already pushed */ }
    return out;
}

std::vector<i64> canonical_form(const FPModule& m) { return m.invariants(); }

bool is_isomorphic(const FPModule& a, const FPModule& b) {
    require(a.ring() == b.ring(), "is_isomorphic: rings differ");
    return a.invariants() == b.invariants();
}

ModuleMorphism::ModuleMorphism(FPModule source, FPModule target, Matrix action)
    : source_(std::move(source)), target_(std::move(target)), action_(std::move(action)) {
    require(source_.ring() == target_.ring(), "morphism ring mismatch");
    require(action_.rows() == source_.generators() && action_.cols() == target_.generators(),
            "morphism action shape mismatch");
    // Well-definedness: source relations must land in the target relation span.
    Matrix pushed = source_.presentation() * action_;
    require(solve_left(target_.presentation(), pushed).solvable,
            "morphism does not respect presentations");
}

ModuleMorphism ModuleMorphism::zero(const FPModule& source, const FPModule& target) {
    return ModuleMorphism(source, target,
                          Matrix::zero(source.ring(), source.generators(), target.generators()));
}

ModuleMorphism ModuleMorphism::identity(const FPModule& m) {
    return ModuleMorphism(m, m, Matrix::identity(m.ring(), m.generators()));
}

ModuleMorphism ModuleMorphism::then(const ModuleMorphism& next) const {
    require(target_.same_object(next.source_) || target_.presentation() == next.source_.presentation(),
            "composition target/source mismatch");
    return ModuleMorphism(source_, next.target_, action_ * next.action_);
}

ModuleMorphism ModuleMorphism::plus(const ModuleMorphism& other) const {
    return ModuleMorphism(source_, target_, action_ + other.action_);
}

ModuleMorphism ModuleMorphism::negated() const {
    return ModuleMorphism(source_, target_, action_.scaled(-1));
}

bool ModuleMorphism::is_zero_morphism() const {
    return solve_left(target_.presentation(), action_).solvable;
}

bool ModuleMorphism::equals(const ModuleMorphism& o) const {
    if (!(source_.presentation() == o.source_.presentation())) return false;
    if (!(target_.presentation() == o.target_.presentation())) return false;
    return solve_left(target_.presentation(), action_ - o.action_).solvable;
}

bool is_monic(const ModuleMorphism& f) {
    if (f.source().cardinality() <= module_config().elementwise_bound)
        return is_monic_elementwise(f);
    return kernel(f).module.is_zero_module();
}

bool is_epic(const ModuleMorphism& f) {
    // the elementwise path enumerates the source
    if (f.source().cardinality() <= module_config().elementwise_bound)
        return is_epic_elementwise(f);
    return cokernel(f).module.is_zero_module();
}

ModuleMorphism inverse_of_iso(const ModuleMorphism& f) {
    const FPModule& a = f.source();
    const FPModule& b = f.target();
    BlockSystem sys(a.ring());
    int gv = sys.add_unknown(b.generators(), a.generators());
    int eq = sys.add_equation(a.generators(), a.generators());
    sys.add_term_left(eq, gv, f.action());
    if (a.relations() > 0) {
        int w = sys.add_unknown(a.generators(), a.relations());
        sys.add_term_right(eq, w, a.presentation().scaled(-1));
    }
    sys.set_rhs(eq, Matrix::identity(a.ring(), a.generators()));
    if (b.relations() > 0) {
        // the inverse must be well-defined itself
        int wd = sys.add_equation(b.relations(), a.generators());
        sys.add_term_left(wd, gv, b.presentation());
        if (a.relations() > 0) {
            int v = sys.add_unknown(b.relations(), a.relations());
            sys.add_term_right(wd, v, a.presentation().scaled(-1));
        }
    }
    auto sol = sys.solve();
    require(sol.solvable, "morphism has no right inverse");
    ModuleMorphism g(b, a, sys.extract(sol.particular, gv));
    require(g.then(f).equals(ModuleMorphism::identity(b)), "morphism is not an isomorphism");
    return g;
}

bool is_monic_elementwise(const ModuleMorphism& f) {
    auto elems = f.source().elements();
    std::vector<std::vector<i64>> seen;
    seen.reserve(elems.size());
    for (const auto& e : elems) seen.push_back(f.apply(e).entries());
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool is_epic_elementwise(const ModuleMorphism& f) {
    auto elems = f.source().elements();
    std::vector<std::vector<i64>> seen;
    seen.reserve(elems.size());
    for (const auto& e : elems) seen.push_back(f.apply(e).entries());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return static_cast<i64>(seen.size()) == f.target().cardinality();
}

Subquotient make_subquotient(const Ring& ring, int ambient, Matrix k_gens, Matrix i_gens) {
    require(k_gens.cols() == ambient && i_gens.cols() == ambient, "subquotient width mismatch");
    require(solve_left(k_gens, i_gens).solvable, "subquotient: denominator not inside numerator");
    Matrix syz = solve_left_homogeneous(k_gens, 1).kernel;
    Matrix icoords = solve_left(k_gens, i_gens).x;
    Subquotient sq;
    sq.k_gens = k_gens;
    sq.i_gens = i_gens;
    sq.module = FPModule(ring, Matrix::vstack(syz, icoords));
    return sq;
}

Matrix Subquotient::coords_of(const Matrix& ambient_rows) const {
    LeftSolve s = solve_left(k_gens, ambient_rows);
    require(s.solvable, "vector is not in the subquotient numerator");
    return s.x;
}

Matrix Subquotient::lift(const Matrix& coords) const { return coords * k_gens; }

bool Subquotient::contains_ambient(const Matrix& v) const {
    return solve_left(k_gens, v).solvable;
}

KernelResult kernel(const ModuleMorphism& f) {
    const Ring& ring = f.source().ring();
    const FPModule& a = f.source();
    const FPModule& b = f.target();
    BlockSystem sys(ring);
    int xv = sys.add_unknown(1, a.generators());
    int wv = sys.add_unknown(1, b.relations());
    int eq = sys.add_equation(1, b.generators());
    sys.add_term_right(eq, xv, f.action());
    sys.add_term_right(eq, wv, b.presentation().scaled(-1));
    auto sol = sys.solve();
    require(sol.solvable, "homogeneous system must be solvable");
    // Project kernel generators to the x-block and canonicalize.
    Matrix gens(ring, sol.kernel.rows(), a.generators());
    for (int i = 0; i < sol.kernel.rows(); ++i) {
        Matrix g = sys.extract(sol.kernel, xv, i);
        for (int j = 0; j < a.generators(); ++j) gens.set(i, j, g.at(0, j));
    }
    Matrix reduced = howell_form(gens).h;
    if (reduced.rows() == 0) reduced = Matrix::zero(ring, 0, a.generators());
    KernelResult res;
    res.sq = make_subquotient(ring, a.generators(), Matrix::vstack(reduced, a.presentation()),
                              a.presentation());
    res.module = res.sq.module;
    res.inclusion = ModuleMorphism(res.module, a, res.sq.k_gens);
    return res;
}

CokernelResult cokernel(const ModuleMorphism& f) {
    const FPModule& b = f.target();
    FPModule q(b.ring(), Matrix::vstack(b.presentation(), f.action()));
    CokernelResult res;
    res.module = q;
    res.projection = ModuleMorphism(b, q, Matrix::identity(b.ring(), b.generators()));
    return res;
}

ImageResult image(const ModuleMorphism& f) {
    const FPModule& b = f.target();
    Matrix k = Matrix::vstack(f.action(), b.presentation());
    ImageResult res;
    res.sq = make_subquotient(b.ring(), b.generators(), k, b.presentation());
    res.module = res.sq.module;
    res.inclusion = ModuleMorphism(res.module, b, res.sq.k_gens);
    return res;
}

bool is_exact_pair(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (!f.then(g).is_zero_morphism()) return false;
    KernelResult kg = kernel(g);
    Matrix im = Matrix::vstack(f.action(), f.target().presentation());
    // ker(g) ⊆ im(f): every kernel generator must lie in the image span.
    return solve_left(im, kg.sq.k_gens).solvable;
}

DirectSum direct_sum(const std::vector<FPModule>& parts) {
    require(!parts.empty(), "direct_sum needs at least one part");
    const Ring& ring = parts.front().ring();
    std::vector<Matrix> pres;
    for (const auto& p : parts) {
        require(p.ring() == ring, "direct_sum ring mismatch");
        pres.push_back(p.presentation());
    }
    DirectSum ds;
    ds.module = FPModule(ring, Matrix::block_diag(pres, ring));
    int total = ds.module.generators();
    int off = 0;
    for (const auto& p : parts) {
        int g = p.generators();
        Matrix inj(ring, g, total);
        for (int i = 0; i < g; ++i) inj.set(i, off + i, 1);
        Matrix proj(ring, total, g);
        for (int i = 0; i < g; ++i) proj.set(off + i, i, 1);
        ds.injections.emplace_back(p, ds.module, inj);
        ds.projections.emplace_back(ds.module, p, proj);
        off += g;
    }
    return ds;
}

ModuleMorphism sum_map(const DirectSum& ds, const std::vector<ModuleMorphism>& legs) {
    require(legs.size() == ds.injections.size(), "sum_map leg count mismatch");
    Matrix action = legs.front().action();
    for (size_t i = 1; i < legs.size(); ++i) action = Matrix::vstack(action, legs[i].action());
    return ModuleMorphism(ds.module, legs.front().target(), action);
}

ModuleMorphism product_map(const DirectSum& ds, const std::vector<ModuleMorphism>& legs) {
    require(legs.size() == ds.projections.size(), "product_map leg count mismatch");
    Matrix action = legs.front().action();
    for (size_t i = 1; i < legs.size(); ++i) action = Matrix::hstack(action, legs[i].action());
    return ModuleMorphism(legs.front().source(), ds.module, action);
}

PushoutResult pushout(const ModuleMorphism& f, const ModuleMorphism& g) {
    require(f.source().same_object(g.source()) || f.source().presentation() == g.source().presentation(),
            "pushout legs must share the corner");
    DirectSum ds = direct_sum({f.target(), g.target()});
    Matrix h = Matrix::hstack(f.action(), g.action().scaled(-1));
    ModuleMorphism corner(f.source(), ds.module, h);
    CokernelResult co = cokernel(corner);
    PushoutResult res;
    res.module = co.module;
    res.from_b = ds.injections[0].then(co.projection);
    res.from_c = ds.injections[1].then(co.projection);
    return res;
}

PullbackResult pullback(const ModuleMorphism& f, const ModuleMorphism& g) {
    require(f.target().same_object(g.target()) || f.target().presentation() == g.target().presentation(),
            "pullback legs must share the corner");
    DirectSum ds = direct_sum({f.source(), g.source()});
    ModuleMorphism h = sum_map(ds, {f, g.negated()});
    KernelResult k = kernel(h);
    PullbackResult res;
    res.module = k.module;
    res.to_b = k.inclusion.then(ds.projections[0]);
    res.to_c = k.inclusion.then(ds.projections[1]);
    return res;
}

ShortExactSequence ShortExactSequence::checked(ModuleMorphism inj, ModuleMorphism surj) {
    require(inj.target().same_object(surj.source()) ||
                inj.target().presentation() == surj.source().presentation(),
            "ses middle mismatch");
    require(is_monic(inj), "ses: inj is not monic");
    require(is_epic(surj), "ses: surj is not epic");
    require(is_exact_pair(inj, surj), "ses: image(inj) != kernel(surj)");
    ShortExactSequence s;
    s.left = inj.source();
    s.mid = inj.target();
    s.right = surj.target();
    s.inj = std::move(inj);
    s.surj = std::move(surj);
    return s;
}

ShortExactSequence split_ses(const FPModule& left, const FPModule& right) {
    DirectSum ds = direct_sum({left, right});
    return ShortExactSequence::checked(ds.injections[0], ds.projections[1]);
}

CubeDiagram::CubeDiagram(int arity, Ring ring) : arity_(arity), ring_(std::move(ring)) {
    require(arity >= 1 && arity <= 5, "cube arity out of supported range");
    vertices_.resize(static_cast<size_t>(1) << arity);
}

void CubeDiagram::set_vertex(int mask, FPModule m) { vertices_[mask] = std::move(m); }

void CubeDiagram::set_edge(int from_mask, int axis, ModuleMorphism f) {
    require((from_mask & (1 << axis)) == 0, "edge must raise the bit");
    edges_.insert_or_assign({from_mask, axis}, std::move(f));
}

void CubeDiagram::set_puncture(int mask) {
    require(mask == 0 || mask == (1 << arity_) - 1, "puncture must be a corner");
    puncture_ = mask;
}

const FPModule& CubeDiagram::vertex(int mask) const {
    require(vertices_[mask].has_value(), "missing cube vertex");
    return *vertices_[mask];
}

const ModuleMorphism& CubeDiagram::edge(int from_mask, int axis) const {
    auto it = edges_.find({from_mask, axis});
    require(it != edges_.end(), "missing cube edge");
    return it->second;
}

bool CubeDiagram::has_vertex(int mask) const {
    return (!puncture_ || *puncture_ != mask) && vertices_[mask].has_value();
}

void CubeDiagram::validate() const {
    int top = (1 << arity_) - 1;
    for (int mask = 0; mask <= top; ++mask) {
        if (puncture_ && *puncture_ == mask) continue;
        require(vertices_[mask].has_value(), "cube vertex not assigned");
    }
    for (int mask = 0; mask < top; ++mask) {
        if (!has_vertex(mask)) continue;
        for (int i = 0; i < arity_; ++i) {
            if (mask & (1 << i)) continue;
            if (!has_vertex(mask | (1 << i))) continue;
            for (int j = i + 1; j < arity_; ++j) {
                if (mask & (1 << j)) continue;
                int mi = mask | (1 << i), mj = mask | (1 << j), mij = mi | (1 << j);
                if (!has_vertex(mi) || !has_vertex(mj) || !has_vertex(mij)) continue;
                ModuleMorphism a = edge(mask, i).then(edge(mi, j));
                ModuleMorphism b = edge(mask, j).then(edge(mj, i));
                require(a.equals(b), "cube face does not commute");
            }
        }
    }
}

CubeColimit cube_colimit(const CubeDiagram& d) {
    d.validate();
    const Ring& ring = d.vertex(d.puncture() && *d.puncture() == 0 ? 1 : 0).ring();
    CubeColimit res;
    std::vector<FPModule> parts;
    std::vector<int> offsets;
    int off = 0;
    for (int mask = 0; mask < d.vertex_count(); ++mask) {
        if (!d.has_vertex(mask)) continue;
        res.vertex_order.push_back(mask);
        parts.push_back(d.vertex(mask));
        offsets.push_back(off);
        off += d.vertex(mask).generators();
    }
    res.sum = direct_sum(parts);
    int total = res.sum.module.generators();
    Matrix rels = res.sum.module.presentation();
    auto index_of = [&](int mask) {
        for (size_t i = 0; i < res.vertex_order.size(); ++i)
            if (res.vertex_order[i] == mask) return static_cast<int>(i);
        return -1;
    };
    for (int mask = 0; mask < d.vertex_count(); ++mask) {
        if (!d.has_vertex(mask)) continue;
        for (int axis = 0; axis < d.arity(); ++axis) {
            if (mask & (1 << axis)) continue;
            int to = mask | (1 << axis);
            if (!d.has_vertex(to)) continue;
            const ModuleMorphism& e = d.edge(mask, axis);
            int iu = index_of(mask), iw = index_of(to);
            Matrix rows(ring, e.source().generators(), total);
            for (int i = 0; i < e.source().generators(); ++i) {
                rows.set(i, offsets[iu] + i, -1);
                for (int j = 0; j < e.target().generators(); ++j)
                    rows.set(i, offsets[iw] + j, e.action().at(i, j));
            }
            rels = Matrix::vstack(rels, rows);
        }
    }
    res.module = FPModule(ring, rels);
    res.legs.resize(d.vertex_count());
    for (size_t i = 0; i < res.vertex_order.size(); ++i) {
        const FPModule& v = parts[i];
        Matrix inj(ring, v.generators(), total);
        for (int k = 0; k < v.generators(); ++k) inj.set(k, offsets[i] + k, 1);
        res.legs[res.vertex_order[i]] = ModuleMorphism(v, res.module, inj);
    }
    return res;
}

ModuleMorphism CubeColimit::induced(const std::vector<ModuleMorphism>& cocone,
                                    const FPModule& target) const {
    Matrix action(target.ring(), 0, target.generators());
    for (int mask : vertex_order) action = Matrix::vstack(action, cocone[mask].action());
    return ModuleMorphism(module, target, action);
}

CubeLimit cube_limit(const CubeDiagram& d) {
    d.validate();
    const Ring& ring = d.vertex(d.puncture() && *d.puncture() == 0 ? 1 : 0).ring();
    CubeLimit res;
    std::vector<FPModule> parts;
    std::vector<int> offsets;
    int off = 0;
    for (int mask = 0; mask < d.vertex_count(); ++mask) {
        if (!d.has_vertex(mask)) continue;
        res.vertex_order.push_back(mask);
        parts.push_back(d.vertex(mask));
        offsets.push_back(off);
        off += d.vertex(mask).generators();
    }
    res.sum = direct_sum(parts);
    int total = res.sum.module.generators();
    auto index_of = [&](int mask) {
        for (size_t i = 0; i < res.vertex_order.size(); ++i)
            if (res.vertex_order[i] == mask) return static_cast<int>(i);
        return -1;
    };
    BlockSystem sys(ring);
    int xv = sys.add_unknown(1, total);
    std::vector<std::pair<int, int>> eqs;
    for (int mask = 0; mask < d.vertex_count(); ++mask) {
        if (!d.has_vertex(mask)) continue;
        for (int axis = 0; axis < d.arity(); ++axis) {
            if (mask & (1 << axis)) continue;
            int to = mask | (1 << axis);
            if (!d.has_vertex(to)) continue;
            const ModuleMorphism& e = d.edge(mask, axis);
            int iu = index_of(mask), iw = index_of(to);
            int gw = e.target().generators();
            // x_u * action - x_w = 0 (mod relations of the target vertex)
            Matrix coeff(ring, total, gw);
            for (int i = 0; i < e.source().generators(); ++i)
                for (int j = 0; j < gw; ++j) coeff.set(offsets[iu] + i, j, e.action().at(i, j));
            for (int j = 0; j < gw; ++j) coeff.set(offsets[iw] + j, j, coeff.at(offsets[iw] + j, j) - 1);
            int eq = sys.add_equation(1, gw);
            sys.add_term_right(eq, xv, coeff);
            int slack = sys.add_unknown(1, e.target().relations());
            sys.add_term_right(eq, slack, e.target().presentation().scaled(-1));
            eqs.emplace_back(eq, slack);
        }
    }
    auto sol = sys.solve();
    require(sol.solvable, "limit system must be solvable");
    Matrix gens(ring, sol.kernel.rows(), total);
    for (int i = 0; i < sol.kernel.rows(); ++i) {
        Matrix g = sys.extract(sol.kernel, xv, i);
        for (int j = 0; j < total; ++j) gens.set(i, j, g.at(0, j));
    }
    Matrix reduced = howell_form(gens).h;
    if (reduced.rows() == 0) reduced = Matrix::zero(ring, 0, total);
    res.sq = make_subquotient(ring, total, Matrix::vstack(reduced, res.sum.module.presentation()),
                              res.sum.module.presentation());
    res.module = res.sq.module;
    res.legs.resize(d.vertex_count());
    for (size_t i = 0; i < res.vertex_order.size(); ++i) {
        const FPModule& v = parts[i];
        Matrix leg = res.sq.k_gens.cols_slice(offsets[i], v.generators());
        res.legs[res.vertex_order[i]] = ModuleMorphism(res.module, v, leg);
    }
    return res;
}

ModuleMorphism CubeLimit::induced(const std::vector<ModuleMorphism>& cone,
                                  const FPModule& source) const {
    Matrix ambient(source.ring(), source.generators(), 0);
    for (int mask : vertex_order) ambient = Matrix::hstack(ambient, cone[mask].action());
    Matrix coords = sq.coords_of(ambient);
    return ModuleMorphism(source, module, coords);
}

namespace {

// Free cover on the canonical generators (one per nontrivial invariant).
std::pair<FPModule, ModuleMorphism> free_cover(const FPModule& m) {
    const Ring& ring = m.ring();
    std::vector<int> pos;
    for (int j = 0; j < m.generators(); ++j)
        if (m.gen_divisors()[j] != 1) pos.push_back(j);
    int k = static_cast<int>(pos.size());
    FPModule f = FPModule::free_module(ring, k);
    const Matrix& basis = m.diagonal_basis();
    Matrix aug(ring, k, m.generators());
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < m.generators(); ++c) aug.set(j, c, basis.at(pos[j], c));
    return {f, ModuleMorphism(f, m, aug)};
}

}  // namespace

const Resolution& FPModule::resolution() const {
    std::call_once(d_->resolution_once, [this] {
        auto res = std::make_shared<Resolution>();
        // aug targets a detached copy with an equal presentation; targeting
        // *this would create a shared-ownership cycle through the cache
        FPModule detached(ring(), presentation());
        auto [f0, aug] = free_cover(detached);
        res->f0 = f0;
        res->aug = aug;
        KernelResult k1 = kernel(aug);
        res->syzygy = k1.module;
        res->syzygy_inclusion = k1.inclusion;
        auto [f1, aug1] = free_cover(k1.module);
        res->f1 = f1;
        res->f1_cover = aug1;
        res->d1 = aug1.then(k1.inclusion);
        KernelResult k2 = kernel(aug1);
        auto [f2, aug2] = free_cover(k2.module);
        res->f2 = f2;
        res->d2 = aug2.then(k2.inclusion);
        KernelResult k3 = kernel(aug2);
        auto [f3, aug3] = free_cover(k3.module);
        res->f3 = f3;
        res->d3 = aug3.then(k3.inclusion);
        d_->resolution = std::move(res);
    });
    return *d_->resolution;
}

ShortExactSequence realize_extension(const FPModule& d, const FPModule& x,
                                     const ModuleMorphism& cls) {
    const Resolution& res = d.resolution();
    require(cls.source().same_object(res.syzygy), "cls domain is not the registered syzygy");
    require(cls.target().same_object(x) || cls.target().presentation() == x.presentation(),
            "cls target mismatch");
    PushoutResult po = pushout(res.syzygy_inclusion, cls);
    // Y -> D: the free cover map on the F0 block, zero on the X block.
    Matrix surj_action = Matrix::vstack(
        res.aug.action(), Matrix::zero(d.ring(), x.generators(), d.generators()));
    ModuleMorphism surj(po.module, d, surj_action);
    return ShortExactSequence::checked(po.from_c, surj);
}

ElementTable element_table(const FPModule& m) {
    ElementTable t;
    t.module = m;
    t.elems = m.elements();
    return t;
}

int ElementTable::index_of(const Matrix& v) const {
    Matrix c = module.canonical_rep(v);
    for (size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == c) return static_cast<int>(i);
    return -1;
}

SesMorphism SesMorphism::checked(ShortExactSequence top, ShortExactSequence bottom,
                                 ModuleMorphism left, ModuleMorphism mid, ModuleMorphism right) {
    require(top.inj.then(mid).equals(left.then(bottom.inj)), "ses map: left square does not commute");
    require(top.surj.then(right).equals(mid.then(bottom.surj)), "ses map: right square does not commute");
    SesMorphism sm;
    sm.top = std::move(top);
    sm.bottom = std::move(bottom);
    sm.left = std::move(left);
    sm.mid = std::move(mid);
    sm.right = std::move(right);
    return sm;
}

namespace {

// Restriction of f to a kernel subobject of its source (image lands in the
// kernel of the corresponding bottom map by commutativity).
ModuleMorphism restrict_to_kernels(const KernelResult& from, const KernelResult& to,
                                   const ModuleMorphism& f) {
    Matrix pushed = from.sq.k_gens * f.action();
    Matrix coords = to.sq.coords_of(pushed);
    return ModuleMorphism(from.module, to.module, coords);
}

ModuleMorphism between_cokernels(const CokernelResult& from, const CokernelResult& to,
                                 const ModuleMorphism& f) {
    return ModuleMorphism(from.module, to.module, f.action());
}

}  // namespace

SnakeSequence snake_sequence(const SesMorphism& sm) {
    SnakeSequence s;
    s.ker_left = kernel(sm.left);
    s.ker_mid = kernel(sm.mid);
    s.ker_right = kernel(sm.right);
    s.coker_left = cokernel(sm.left);
    s.coker_mid = cokernel(sm.mid);
    s.coker_right = cokernel(sm.right);
    s.k1 = restrict_to_kernels(s.ker_left, s.ker_mid, sm.top.inj);
    s.k2 = restrict_to_kernels(s.ker_mid, s.ker_right, sm.top.surj);
    s.c1 = between_cokernels(s.coker_left, s.coker_mid, sm.bottom.inj);
    s.c2 = between_cokernels(s.coker_mid, s.coker_right, sm.bottom.surj);

    // Connecting morphism: lift each generator of ker(right) through the top
    // surjection, push down the middle, pull back through the bottom
    // injection, and read off the class in coker(left).
    const Ring& ring = sm.top.mid.ring();
    int gk = s.ker_right.module.generators();
    Matrix action(ring, gk, s.coker_left.module.generators());
    for (int i = 0; i < gk; ++i) {
        Matrix x = s.ker_right.sq.k_gens.row(i);
        // x = v * surj_top  (mod relations of top.right)
        Matrix stack = Matrix::vstack(sm.top.surj.action(), sm.top.right.presentation());
        LeftSolve lift = solve_left(stack, x);
        require(lift.solvable, "snake: top surjection is not onto the kernel element");
        Matrix v = lift.x.cols_slice(0, sm.top.mid.generators());
        Matrix pushed = v * sm.mid.action();
        // pushed = u * inj_bottom (mod relations of bottom.mid)
        Matrix stack2 = Matrix::vstack(sm.bottom.inj.action(), sm.bottom.mid.presentation());
        LeftSolve pull = solve_left(stack2, pushed);
        require(pull.solvable, "snake: middle image does not come from the bottom left");
        Matrix u = pull.x.cols_slice(0, sm.bottom.left.generators());
        for (int j = 0; j < u.cols(); ++j) action.set(i, j, u.at(0, j));
    }
    s.connecting = ModuleMorphism(s.ker_right.module, s.coker_left.module, action);

    return s;
}

bool SnakeSequence::exact() const {
    return is_exact_pair(k1, k2) && is_exact_pair(k2, connecting) &&
           is_exact_pair(connecting, c1) && is_exact_pair(c1, c2);
}

}  // namespace cotlab
