#include "cotlab/bifunctors.hpp"

#include <algorithm>

#include "cotlab/linear_system.hpp"

namespace cotlab {

FPModule tensor(const FPModule& a, const FPModule& b) {
    require(a.ring() == b.ring(), "tensor ring mismatch");
    const Ring& ring = a.ring();
    Matrix rel_a = a.presentation().kron(Matrix::identity(ring, b.generators()));
    Matrix rel_b = Matrix::identity(ring, a.generators()).kron(b.presentation());
    return FPModule(ring, Matrix::vstack(rel_a, rel_b));
}

ModuleMorphism tensor_map(const ModuleMorphism& f, const ModuleMorphism& g) {
    return ModuleMorphism(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                          f.action().kron(g.action()));
}

namespace {

Matrix flatten(const Matrix& m) {
    return Matrix(m.ring(), 1, m.rows() * m.cols(), m.entries());
}

Matrix reshape(const Matrix& row, int rows, int cols, const Ring& ring) {
    require(row.rows() == 1 && row.cols() == rows * cols, "reshape size mismatch");
    return Matrix(ring, rows, cols, row.entries());
}

// Solution span of { F : p_a·F ≡ 0 mod rowspan(p_b) } flattened row-major.
Matrix welldefined_span(const Ring& ring, const Matrix& p_a, int g_a, const Matrix& p_b, int g_b) {
    BlockSystem sys(ring);
    int fv = sys.add_unknown(g_a, g_b);
    int wv = sys.add_unknown(p_a.rows(), p_b.rows());
    int eq = sys.add_equation(p_a.rows(), g_b);
    sys.add_term_left(eq, fv, p_a);
    if (p_b.rows() > 0) sys.add_term_right(eq, wv, p_b.scaled(-1));
    auto sol = sys.solve();
    require(sol.solvable, "homogeneous hom system must be solvable");
    Matrix gens(ring, sol.kernel.rows(), g_a * g_b);
    for (int i = 0; i < sol.kernel.rows(); ++i) {
        Matrix f = sys.extract(sol.kernel, fv, i);
        for (int j = 0; j < g_a * g_b; ++j) gens.set(i, j, f.entries()[j]);
    }
    Matrix h = howell_form(gens).h;
    return h.rows() == 0 ? Matrix::zero(ring, 0, g_a * g_b) : h;
}

}  // namespace

HomModule hom_module(const FPModule& a, const FPModule& b) {
    require(a.ring() == b.ring(), "hom ring mismatch");
    const Ring& ring = a.ring();
    int ga = a.generators(), gb = b.generators();
    Matrix k = welldefined_span(ring, a.presentation(), ga, b.presentation(), gb);
    Matrix zero_reps = Matrix::identity(ring, ga).kron(b.presentation());
    HomModule h;
    h.source = a;
    h.target = b;
    h.sq = make_subquotient(ring, ga * gb, Matrix::vstack(k, zero_reps), zero_reps);
    h.module = h.sq.module;
    return h;
}

ModuleMorphism HomModule::to_morphism(const Matrix& coords) const {
    Matrix flat = sq.lift(coords);
    return ModuleMorphism(source, target,
                          reshape(flat, source.generators(), target.generators(), source.ring()));
}

Matrix HomModule::coords_of(const ModuleMorphism& f) const {
    require(f.source().presentation() == source.presentation() &&
                f.target().presentation() == target.presentation(),
            "hom coords: morphism does not live in this hom module");
    return sq.coords_of(flatten(f.action()));
}

std::vector<ModuleMorphism> HomModule::all_morphisms() const {
    std::vector<ModuleMorphism> out;
    for (const auto& c : module.elements()) out.push_back(to_morphism(c));
    return out;
}

ModuleMorphism hom_map(const HomModule& from, const HomModule& to, const ModuleMorphism& pre,
                       const ModuleMorphism& post) {
    Matrix action(from.module.ring(), from.module.generators(), to.module.generators());
    for (int i = 0; i < from.module.generators(); ++i) {
        Matrix unit(from.module.ring(), 1, from.module.generators());
        unit.set(0, i, 1);
        ModuleMorphism m = from.to_morphism(unit);
        Matrix coords = to.coords_of(pre.then(m).then(post));
        for (int j = 0; j < to.module.generators(); ++j) action.set(i, j, coords.at(0, j));
    }
    return ModuleMorphism(from.module, to.module, action);
}

FPModule ext(int k, const FPModule& a, const FPModule& b) {
    require(k == 1 || k == 2, "ext degree must be 1 or 2");
    require(a.ring() == b.ring(), "ext ring mismatch");
    const Ring& ring = a.ring();
    const Resolution& res = a.resolution();
    const ModuleMorphism& d_in = (k == 1) ? res.d1 : res.d2;    // f_k -> f_{k-1}
    const ModuleMorphism& d_out = (k == 1) ? res.d2 : res.d3;   // f_{k+1} -> f_k
    int rk = d_in.action().rows();        // rank of f_k
    int rk1 = d_in.action().cols();       // rank of f_{k-1}
    int gb = b.generators();

    // Kernel: matrices F (rk x gb) with d_out·F ≡ 0 mod target relations.
    BlockSystem sys(ring);
    int fv = sys.add_unknown(rk, gb);
    int wv = sys.add_unknown(d_out.action().rows(), b.relations());
    int eq = sys.add_equation(d_out.action().rows(), gb);
    sys.add_term_left(eq, fv, d_out.action());
    if (b.relations() > 0) sys.add_term_right(eq, wv, b.presentation().scaled(-1));
    auto sol = sys.solve();
    require(sol.solvable, "ext system must be solvable");
    Matrix kgens(ring, sol.kernel.rows(), rk * gb);
    for (int i = 0; i < sol.kernel.rows(); ++i) {
        Matrix f = sys.extract(sol.kernel, fv, i);
        for (int j = 0; j < rk * gb; ++j) kgens.set(i, j, f.entries()[j]);
    }
    kgens = howell_form(kgens).h;
    if (kgens.rows() == 0) kgens = Matrix::zero(ring, 0, rk * gb);

    // Image of Hom(f_{k-1}, b): matrices d_in·G plus the zero identifications.
    Matrix igens(ring, 0, rk * gb);
    for (int i = 0; i < rk1; ++i)
        for (int j = 0; j < gb; ++j) {
            Matrix e(ring, rk1, gb);
            e.set(i, j, 1);
            igens = Matrix::vstack(igens, flatten(d_in.action() * e));
        }
    igens = Matrix::vstack(igens, Matrix::identity(ring, rk).kron(b.presentation()));

    Subquotient sq = make_subquotient(ring, rk * gb, Matrix::vstack(kgens, igens), igens);
    return sq.module;
}

Ext1Classes ext1_classes(const FPModule& a, const FPModule& b) {
    require(a.ring() == b.ring(), "ext ring mismatch");
    const Ring& ring = a.ring();
    const Resolution& res = a.resolution();
    Ext1Classes e;
    e.syzygy = res.syzygy;
    e.hom_syz = hom_module(res.syzygy, b);
    int gs = res.syzygy.generators(), gb = b.generators();
    // Restrictions of Hom(f0, b) along the syzygy inclusion. Morphisms from
    // the free cover are arbitrary matrices.
    Matrix igens = e.hom_syz.sq.i_gens;
    int r0 = res.f0.generators();
    for (int i = 0; i < r0; ++i)
        for (int j = 0; j < gb; ++j) {
            Matrix g(ring, r0, gb);
            g.set(i, j, 1);
            igens = Matrix::vstack(igens, flatten(res.syzygy_inclusion.action() * g));
        }
    e.sq = make_subquotient(ring, gs * gb, Matrix::vstack(e.hom_syz.sq.k_gens, igens), igens);
    e.module = e.sq.module;
    return e;
}

ModuleMorphism Ext1Classes::class_rep(const Matrix& coords) const {
    Matrix flat = sq.lift(coords);
    return ModuleMorphism(syzygy, hom_syz.target,
                          Matrix(syzygy.ring(), syzygy.generators(), hom_syz.target.generators(),
                                 flat.entries()));
}

std::vector<ModuleMorphism> Ext1Classes::all_class_reps() const {
    std::vector<ModuleMorphism> out;
    for (const auto& c : module.elements()) out.push_back(class_rep(c));
    return out;
}

std::vector<ShortExactSequence> all_extensions(const FPModule& d, const FPModule& x) {
    std::vector<ShortExactSequence> out;
    Ext1Classes e = ext1_classes(d, x);
    for (const auto& cls : e.all_class_reps()) out.push_back(realize_extension(d, x, cls));
    return out;
}

namespace {

class TensorAdjunction final : public MultiAdjunction {
public:
    TensorAdjunction(Ring ring, int arity) : ring_(std::move(ring)), arity_(arity) {
        require(arity >= 1 && arity <= 3, "tensor adjunction arity out of range");
    }

    int arity() const override { return arity_; }
    std::string name() const override { return "tensor"; }
    Ring slot_ring(int) const override { return ring_; }
    Ring result_ring() const override { return ring_; }

    FPModule apply(const std::vector<FPModule>& slots) const override {
        require(static_cast<int>(slots.size()) == arity_, "tensor arity mismatch");
        FPModule acc = slots[0];
        for (size_t i = 1; i < slots.size(); ++i) acc = tensor(acc, slots[i]);
        return acc;
    }

    ModuleMorphism map(const std::vector<ModuleMorphism>& maps) const override {
        require(static_cast<int>(maps.size()) == arity_, "tensor arity mismatch");
        ModuleMorphism acc = maps[0];
        for (size_t i = 1; i < maps.size(); ++i) acc = tensor_map(acc, maps[i]);
        return acc;
    }

    FPModule adjoint(int j, const std::vector<FPModule>& others,
                     const FPModule& a0) const override {
        check_adjoint_args(j, others.size());
        if (arity_ == 1) return a0;
        return hom_module(tensor_of(others), a0).module;
    }

    ModuleMorphism adjoint_map(int j, const std::vector<ModuleMorphism>& others,
                               const ModuleMorphism& g0) const override {
        check_adjoint_args(j, others.size());
        if (arity_ == 1) return g0;
        std::vector<FPModule> srcs, tgts;
        std::vector<ModuleMorphism> fs = others;
        for (const auto& f : others) {
            srcs.push_back(f.source());
            tgts.push_back(f.target());
        }
        HomModule from = hom_module(tensor_of(tgts), g0.source());
        HomModule to = hom_module(tensor_of(srcs), g0.target());
        ModuleMorphism pre = tensor_map_of(fs);
        return hom_map(from, to, pre, g0);
    }

    ModuleMorphism transpose(int j, const std::vector<FPModule>& slots, const FPModule& a0,
                             const ModuleMorphism& phi) const override {
        check_slot(j, slots.size());
        if (arity_ == 1) return phi;
        std::vector<FPModule> others = drop_slot(slots, j);
        FPModule t = tensor_of(others);
        HomModule hom = hom_module(t, a0);
        const FPModule& aj = slots[j];
        Matrix psi(ring_, aj.generators(), hom.module.generators());
        for (int c = 0; c < aj.generators(); ++c) {
            Matrix m(ring_, t.generators(), a0.generators());
            for (int ti = 0; ti < t.generators(); ++ti) {
                int full = insert_index(slots, j, c, ti);
                for (int col = 0; col < a0.generators(); ++col)
                    m.set(ti, col, phi.action().at(full, col));
            }
            Matrix coords = hom.coords_of(ModuleMorphism(t, a0, m));
            for (int col = 0; col < hom.module.generators(); ++col) psi.set(c, col, coords.at(0, col));
        }
        return ModuleMorphism(aj, hom.module, psi);
    }

    ModuleMorphism untranspose(int j, const std::vector<FPModule>& slots, const FPModule& a0,
                               const ModuleMorphism& psi) const override {
        check_slot(j, slots.size());
        if (arity_ == 1) return psi;
        std::vector<FPModule> others = drop_slot(slots, j);
        FPModule t = tensor_of(others);
        HomModule hom = hom_module(t, a0);
        FPModule full = apply(slots);
        const FPModule& aj = slots[j];
        Matrix phi(ring_, full.generators(), a0.generators());
        for (int c = 0; c < aj.generators(); ++c) {
            ModuleMorphism m = hom.to_morphism(psi.action().row(c));
            for (int ti = 0; ti < t.generators(); ++ti) {
                int fi = insert_index(slots, j, c, ti);
                for (int col = 0; col < a0.generators(); ++col)
                    phi.set(fi, col, m.action().at(ti, col));
            }
        }
        return ModuleMorphism(full, a0, phi);
    }

private:
    void check_slot(int j, size_t n) const {
        require(static_cast<int>(n) == arity_, "slot list arity mismatch");
        require(j >= 0 && j < arity_, "adjoint index out of range");
    }
    void check_adjoint_args(int j, size_t others) const {
        require(j >= 0 && j < arity_, "adjoint index out of range");
        require(static_cast<int>(others) == arity_ - 1, "others list arity mismatch");
    }

    FPModule tensor_of(const std::vector<FPModule>& xs) const {
        if (xs.empty()) return FPModule::free_module(ring_, 1);
        FPModule acc = xs[0];
        for (size_t i = 1; i < xs.size(); ++i) acc = tensor(acc, xs[i]);
        return acc;
    }
    ModuleMorphism tensor_map_of(const std::vector<ModuleMorphism>& xs) const {
        require(!xs.empty(), "tensor of no morphisms");
        ModuleMorphism acc = xs[0];
        for (size_t i = 1; i < xs.size(); ++i) acc = tensor_map(acc, xs[i]);
        return acc;
    }
    static std::vector<FPModule> drop_slot(const std::vector<FPModule>& slots, int j) {
        std::vector<FPModule> out;
        for (size_t i = 0; i < slots.size(); ++i)
            if (static_cast<int>(i) != j) out.push_back(slots[i]);
        return out;
    }
    // Row-major generator index of the full tensor from the index `c` in slot
    // j and the row-major index `ti` over the remaining slots.
    int insert_index(const std::vector<FPModule>& slots, int j, int c, int ti) const {
        int n = static_cast<int>(slots.size());
        std::vector<int> idx(n, 0);
        // decode ti over slots != j (ascending), then re-encode over all slots
        std::vector<int> gens;
        for (int i = n - 1; i >= 0; --i) {
            if (i == j) continue;
            int g = slots[i].generators();
            idx[i] = ti % g;
            ti /= g;
        }
        idx[j] = c;
        int full = 0;
        for (int i = 0; i < n; ++i) full = full * slots[i].generators() + idx[i];
        (void)gens;
        return full;
    }

    Ring ring_;
    int arity_;
};

class BaseChangeAdjunction final : public MultiAdjunction {
public:
    BaseChangeAdjunction(Ring from, Ring to) : from_(std::move(from)), to_(std::move(to)) {
        require(from_.modulus() % to_.modulus() == 0, "base change requires n | m");
    }

    int arity() const override { return 1; }
    std::string name() const override {
        return "basechange:" + std::to_string(from_.modulus()) + ":" + std::to_string(to_.modulus());
    }
    Ring slot_ring(int) const override { return from_; }
    Ring result_ring() const override { return to_; }

    FPModule apply(const std::vector<FPModule>& slots) const override {
        require(slots.size() == 1, "base change is 1-variable");
        const FPModule& a = slots[0];
        require(a.ring() == from_, "base change domain ring mismatch");
        return FPModule(to_, reduce_matrix(a.presentation(), to_));
    }

    ModuleMorphism map(const std::vector<ModuleMorphism>& maps) const override {
        require(maps.size() == 1, "base change is 1-variable");
        const ModuleMorphism& f = maps[0];
        return ModuleMorphism(apply({f.source()}), apply({f.target()}),
                              reduce_matrix(f.action(), to_));
    }

    FPModule adjoint(int j, const std::vector<FPModule>& others,
                     const FPModule& b) const override {
        require(j == 0 && others.empty(), "base change adjoint arity");
        require(b.ring() == to_, "restriction argument ring mismatch");
        Matrix lifted = reduce_matrix(b.presentation(), from_);
        Matrix torsion = Matrix::identity(from_, b.generators()).scaled(to_.modulus());
        return FPModule(from_, Matrix::vstack(lifted, torsion));
    }

    ModuleMorphism adjoint_map(int j, const std::vector<ModuleMorphism>& others,
                               const ModuleMorphism& g0) const override {
        require(j == 0 && others.empty(), "base change adjoint arity");
        return ModuleMorphism(adjoint(0, {}, g0.source()), adjoint(0, {}, g0.target()),
                              reduce_matrix(g0.action(), from_));
    }

    ModuleMorphism transpose(int j, const std::vector<FPModule>& slots, const FPModule& a0,
                             const ModuleMorphism& phi) const override {
        require(j == 0 && slots.size() == 1, "base change transpose arity");
        return ModuleMorphism(slots[0], adjoint(0, {}, a0), reduce_matrix(phi.action(), from_));
    }

    ModuleMorphism untranspose(int j, const std::vector<FPModule>& slots, const FPModule& a0,
                               const ModuleMorphism& psi) const override {
        require(j == 0 && slots.size() == 1, "base change transpose arity");
        return ModuleMorphism(apply({slots[0]}), a0, reduce_matrix(psi.action(), to_));
    }

private:
    static Matrix reduce_matrix(const Matrix& m, const Ring& target) {
        return Matrix(target, m.rows(), m.cols(), m.entries());
    }

    Ring from_, to_;
};

class RestrictedAdjunction final : public MultiAdjunction {
public:
    RestrictedAdjunction(AdjunctionPtr base, int slot, FPModule fixed)
        : base_(std::move(base)), slot_(slot), fixed_(std::move(fixed)) {
        require(base_->arity() >= 2, "cannot restrict a 1-variable adjunction");
        require(slot >= 0 && slot < base_->arity(), "restriction slot out of range");
        require(fixed_.ring() == base_->slot_ring(slot), "fixed object ring mismatch");
    }

    int arity() const override { return base_->arity() - 1; }
    std::string name() const override { return base_->name() + "|fixed"; }
    Ring slot_ring(int i) const override { return base_->slot_ring(i < slot_ ? i : i + 1); }
    Ring result_ring() const override { return base_->result_ring(); }

    FPModule apply(const std::vector<FPModule>& slots) const override {
        return base_->apply(insert(slots, fixed_));
    }
    ModuleMorphism map(const std::vector<ModuleMorphism>& maps) const override {
        return base_->map(insert(maps, ModuleMorphism::identity(fixed_)));
    }

    FPModule adjoint(int j, const std::vector<FPModule>& others,
                     const FPModule& a0) const override {
        auto [bj, full_others] = adjoint_args(j, others, fixed_);
        return base_->adjoint(bj, full_others, a0);
    }

    ModuleMorphism adjoint_map(int j, const std::vector<ModuleMorphism>& others,
                               const ModuleMorphism& g0) const override {
        auto [bj, full_others] = adjoint_args(j, others, ModuleMorphism::identity(fixed_));
        return base_->adjoint_map(bj, full_others, g0);
    }

    ModuleMorphism transpose(int j, const std::vector<FPModule>& slots, const FPModule& a0,
                             const ModuleMorphism& phi) const override {
        return base_->transpose(j < slot_ ? j : j + 1, insert(slots, fixed_), a0, phi);
    }
    ModuleMorphism untranspose(int j, const std::vector<FPModule>& slots, const FPModule& a0,
                               const ModuleMorphism& psi) const override {
        return base_->untranspose(j < slot_ ? j : j + 1, insert(slots, fixed_), a0, psi);
    }

private:
    template <typename T>
    std::vector<T> insert(const std::vector<T>& xs, const T& fixed) const {
        require(static_cast<int>(xs.size()) == arity(), "restricted arity mismatch");
        std::vector<T> out;
        for (int i = 0; i <= arity(); ++i) {
            if (i == slot_) out.push_back(fixed);
            if (i < arity()) out.push_back(xs[i]);
        }
        return out;
    }

    // Map a restricted adjoint call to the base adjunction: the fixed object
    // joins the `others` at its position among slots != base_j.
    template <typename T>
    std::pair<int, std::vector<T>> adjoint_args(int j, const std::vector<T>& others,
                                                const T& fixed) const {
        int bj = j < slot_ ? j : j + 1;
        std::vector<T> full;
        int oi = 0;
        for (int i = 0; i < base_->arity(); ++i) {
            if (i == bj) continue;
            if (i == slot_)
                full.push_back(fixed);
            else
                full.push_back(others[oi++]);
        }
        require(oi == static_cast<int>(others.size()), "restricted adjoint others mismatch");
        return {bj, full};
    }

    AdjunctionPtr base_;
    int slot_;
    FPModule fixed_;
};

}  // namespace

AdjunctionPtr tensor_adjunction(const Ring& ring, int arity) {
    return std::make_shared<TensorAdjunction>(ring, arity);
}

AdjunctionPtr identity_adjunction(const Ring& ring) {
    return std::make_shared<TensorAdjunction>(ring, 1);
}

AdjunctionPtr restrict_adjunction(AdjunctionPtr base, int slot, FPModule fixed) {
    return std::make_shared<RestrictedAdjunction>(std::move(base), slot, std::move(fixed));
}

BaseChangePair base_change(i64 m, i64 n) {
    require(m >= 2 && n >= 2 && m % n == 0, "base change requires n | m");
    BaseChangePair p;
    p.from = Ring(m);
    p.to = Ring(n);
    p.adjunction = std::make_shared<BaseChangeAdjunction>(p.from, p.to);
    return p;
}

}  // namespace cotlab
