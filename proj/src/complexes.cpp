#include "cotlab/complexes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cotlab/linear_system.hpp"

namespace cotlab {

ChainComplex ChainComplex::checked(Ring ring, int lo, std::vector<FPModule> modules,
                                   std::vector<ModuleMorphism> diffs) {
    ChainComplex c;
    c.ring_ = ring;
    c.lo_ = lo;
    c.mods_ = std::move(modules);
    c.diffs_ = std::move(diffs);
    require(c.mods_.empty() ? c.diffs_.empty() : c.diffs_.size() == c.mods_.size() - 1,
            "complex: differential count mismatch");
    for (const auto& m : c.mods_) require(m.ring() == ring, "complex: module ring mismatch");
    for (size_t i = 0; i < c.diffs_.size(); ++i) {
        require(c.diffs_[i].source().same_object(c.mods_[i]) &&
                    c.diffs_[i].target().same_object(c.mods_[i + 1]),
                "complex: differential endpoints mismatch");
        if (i + 1 < c.diffs_.size())
            require(c.diffs_[i].then(c.diffs_[i + 1]).is_zero_morphism(),
                    "complex: d∘d != 0");
    }
    if (c.mods_.empty()) {
        c.mods_.push_back(FPModule::zero(ring));
        c.lo_ = 0;
    }
    return c;
}

ChainComplex ChainComplex::zero_complex(const Ring& ring) {
    return checked(ring, 0, {FPModule::zero(ring)}, {});
}

const FPModule& ChainComplex::module_at(int n) const {
    if (in_support(n)) return mods_[static_cast<size_t>(n - lo_)];
    static thread_local std::map<i64, FPModule> zeros;
    auto it = zeros.find(ring_.modulus());
    if (it == zeros.end()) it = zeros.emplace(ring_.modulus(), FPModule::zero(ring_)).first;
    return it->second;
}

ModuleMorphism ChainComplex::diff_at(int n) const {
    if (in_support(n) && in_support(n + 1)) return diffs_[static_cast<size_t>(n - lo_)];
    return ModuleMorphism::zero(module_at(n), module_at(n + 1));
}

ChainComplex ChainComplex::padded_to(int lo, int hi) const {
    require(lo <= lo_ && hi >= this->hi(), "padding must enlarge the support");
    std::vector<FPModule> mods;
    std::vector<ModuleMorphism> diffs;
    for (int n = lo; n <= hi; ++n) mods.push_back(module_at(n));
    ChainComplex padded;
    padded.ring_ = ring_;
    padded.lo_ = lo;
    padded.mods_ = mods;
    for (int n = lo; n < hi; ++n) {
        if (in_support(n) && in_support(n + 1))
            padded.diffs_.push_back(diffs_[static_cast<size_t>(n - lo_)]);
        else
            padded.diffs_.push_back(
                ModuleMorphism::zero(padded.mods_[n - lo], padded.mods_[n + 1 - lo]));
    }
    // re-anchor endpoints so diff source/target are the stored objects
    for (int n = lo; n < hi; ++n) {
        const ModuleMorphism& d = padded.diffs_[n - lo];
        padded.diffs_[n - lo] =
            ModuleMorphism(padded.mods_[n - lo], padded.mods_[n + 1 - lo], d.action());
    }
    return padded;
}

ChainComplex ChainComplex::pruned() const {
    int a = lo_, b = hi();
    while (a <= b && module_at(a).is_zero_module()) ++a;
    while (b >= a && module_at(b).is_zero_module()) --b;
    if (a > b) return zero_complex(ring_);
    std::vector<FPModule> mods(mods_.begin() + (a - lo_), mods_.begin() + (b - lo_ + 1));
    std::vector<ModuleMorphism> diffs(diffs_.begin() + (a - lo_), diffs_.begin() + (b - lo_));
    ChainComplex c;
    c.ring_ = ring_;
    c.lo_ = a;
    c.mods_ = std::move(mods);
    c.diffs_ = std::move(diffs);
    return c;
}

bool ChainComplex::is_zero() const {
    return std::all_of(mods_.begin(), mods_.end(),
                       [](const FPModule& m) { return m.is_zero_module(); });
}

ChainComplex elementary_complex(ElementaryKind kind, int n, const FPModule& a) {
    if (kind == ElementaryKind::Sphere)
        return ChainComplex::checked(a.ring(), n, {a}, {});
    return ChainComplex::checked(a.ring(), n, {a, a}, {ModuleMorphism::identity(a)});
}

ChainComplex direct_sum_complex(const std::vector<ChainComplex>& parts) {
    require(!parts.empty(), "direct_sum_complex needs parts");
    const Ring& ring = parts.front().ring();
    int lo = parts.front().lo(), hi = parts.front().hi();
    for (const auto& p : parts) {
        lo = std::min(lo, p.lo());
        hi = std::max(hi, p.hi());
    }
    std::vector<FPModule> mods;
    std::vector<ModuleMorphism> diffs;
    std::vector<DirectSum> sums;
    for (int n = lo; n <= hi; ++n) {
        std::vector<FPModule> cells;
        for (const auto& p : parts) cells.push_back(p.module_at(n));
        sums.push_back(direct_sum(cells));
        mods.push_back(sums.back().module);
    }
    for (int n = lo; n < hi; ++n) {
        std::vector<Matrix> rows;
        Matrix action(ring, mods[n - lo].generators(), mods[n + 1 - lo].generators());
        int roff = 0;
        for (size_t pi = 0; pi < parts.size(); ++pi) {
            ModuleMorphism d = parts[pi].diff_at(n);
            int coff = 0;
            for (size_t qi = 0; qi < parts.size(); ++qi) {
                if (qi == pi)
                    for (int i = 0; i < d.action().rows(); ++i)
                        for (int j = 0; j < d.action().cols(); ++j)
                            action.set(roff + i, coff + j, d.action().at(i, j));
                coff += parts[qi].module_at(n + 1).generators();
            }
            roff += parts[pi].module_at(n).generators();
        }
        diffs.emplace_back(mods[n - lo], mods[n + 1 - lo], action);
    }
    return ChainComplex::checked(ring, lo, std::move(mods), std::move(diffs));
}

HomologyData homology(const ChainComplex& c, int n) {
    HomologyData h;
    KernelResult z = kernel(c.diff_at(n));
    h.cycles = z.module;
    ImageResult b = image(c.diff_at(n - 1));
    h.boundaries = b.module;
    Subquotient hq = make_subquotient(c.ring(), c.module_at(n).generators(), z.sq.k_gens,
                                      b.sq.k_gens);
    h.homology = hq.module;
    return h;
}

bool is_exact_complex(const ChainComplex& c) {
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (!homology(c, n).homology.is_zero_module()) return false;
    return true;
}

ChainMap ChainMap::checked(ChainComplex source, ChainComplex target,
                           std::vector<ModuleMorphism> parts, int lo) {
    ChainMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.parts_ = std::move(parts);
    f.lo_ = lo;
    int L = std::min(f.source_.lo(), f.target_.lo()) - 1;
    int H = std::max(f.source_.hi(), f.target_.hi());
    for (int n = L; n <= H; ++n) {
        ModuleMorphism fn = f.at(n), fn1 = f.at(n + 1);
        ModuleMorphism lhs = fn.then(f.target_.diff_at(n));
        ModuleMorphism rhs = f.source_.diff_at(n).then(fn1);
        require(solve_left(f.target_.module_at(n + 1).presentation(), lhs.action() - rhs.action())
                    .solvable,
                "chain map squares do not commute");
    }
    return f;
}

ChainMap ChainMap::zero_map(const ChainComplex& source, const ChainComplex& target) {
    int lo = std::min(source.lo(), target.lo());
    int hi = std::max(source.hi(), target.hi());
    std::vector<ModuleMorphism> parts;
    for (int n = lo; n <= hi; ++n)
        parts.push_back(ModuleMorphism::zero(source.module_at(n), target.module_at(n)));
    return checked(source, target, std::move(parts), lo);
}

ChainMap ChainMap::identity(const ChainComplex& c) {
    std::vector<ModuleMorphism> parts;
    for (int n = c.lo(); n <= c.hi(); ++n)
        parts.push_back(ModuleMorphism::identity(c.module_at(n)));
    return checked(c, c, std::move(parts), c.lo());
}

ModuleMorphism ChainMap::at(int n) const {
    if (n >= lo_ && n < lo_ + static_cast<int>(parts_.size()))
        return parts_[static_cast<size_t>(n - lo_)];
    return ModuleMorphism::zero(source_.module_at(n), target_.module_at(n));
}

bool ChainMap::is_zero_map() const {
    for (const auto& p : parts_)
        if (!p.is_zero_morphism()) return false;
    return true;
}

bool ChainMap::equals(const ChainMap& o) const {
    int L = std::min(lo_, o.lo_);
    int H = std::max(hi(), o.hi());
    for (int n = L; n <= H; ++n)
        if (!at(n).equals(o.at(n))) return false;
    return true;
}

std::optional<Homotopy> null_homotopy(const ChainMap& f) {
    const ChainComplex& s = f.source();
    const ChainComplex& t = f.target();
    const Ring& ring = s.ring();
    int L = std::min(s.lo(), t.lo());
    int H = std::max(s.hi(), t.hi()) + 1;

    BlockSystem sys(ring);
    std::map<int, int> sblock;
    for (int n = L; n <= H; ++n) {
        int rows = s.module_at(n).generators();
        int cols = t.module_at(n - 1).generators();
        if (rows > 0 && cols > 0) sblock[n] = sys.add_unknown(rows, cols);
    }
    for (int n = L; n <= H; ++n) {
        int rows = s.module_at(n).generators();
        int cols = t.module_at(n).generators();
        if (rows == 0 || cols == 0) continue;
        int eq = sys.add_equation(rows, cols);
        if (sblock.count(n)) sys.add_term_right(eq, sblock[n], t.diff_at(n - 1).action());
        if (sblock.count(n + 1)) sys.add_term(eq, sblock[n + 1], s.diff_at(n).action(),
                                              Matrix::identity(ring, cols));
        if (t.module_at(n).relations() > 0) {
            int w = sys.add_unknown(rows, t.module_at(n).relations());
            sys.add_term_right(eq, w, t.module_at(n).presentation().scaled(-1));
        }
        sys.set_rhs(eq, f.at(n).action());
        // well-definedness of s^n
        if (sblock.count(n) && s.module_at(n).relations() > 0) {
            int wd = sys.add_equation(s.module_at(n).relations(), t.module_at(n - 1).generators());
            sys.add_term_left(wd, sblock[n], s.module_at(n).presentation());
            if (t.module_at(n - 1).relations() > 0) {
                int v = sys.add_unknown(s.module_at(n).relations(), t.module_at(n - 1).relations());
                sys.add_term_right(wd, v, t.module_at(n - 1).presentation().scaled(-1));
            }
        }
    }
    auto sol = sys.solve();
    if (!sol.solvable) return std::nullopt;

    Homotopy h;
    h.lo = L;
    for (int n = L; n <= H; ++n) {
        Matrix action(ring, s.module_at(n).generators(), t.module_at(n - 1).generators());
        if (sblock.count(n)) action = sys.extract(sol.particular, sblock[n]);
        h.maps.emplace_back(s.module_at(n), t.module_at(n - 1), action);
    }
    // postcondition: ds + sd = f degreewise
    for (int n = L; n <= H; ++n) {
        ModuleMorphism sn = h.maps[static_cast<size_t>(n - L)];
        ModuleMorphism lhs = sn.then(t.diff_at(n - 1));
        if (n + 1 <= H) {
            ModuleMorphism sn1 = h.maps[static_cast<size_t>(n + 1 - L)];
            lhs = lhs.plus(s.diff_at(n).then(sn1));
        }
        require(lhs.equals(f.at(n)), "homotopy postcondition failed");
    }
    return h;
}

std::vector<ChainMap> all_chain_maps(const ChainComplex& source, const ChainComplex& target) {
    const Ring& ring = source.ring();
    int olo = std::max(source.lo(), target.lo());
    int ohi = std::min(source.hi(), target.hi());
    if (olo > ohi) return {ChainMap::zero_map(source, target)};

    BlockSystem sys(ring);
    std::map<int, int> fblock;
    for (int n = olo; n <= ohi; ++n) {
        int rows = source.module_at(n).generators();
        int cols = target.module_at(n).generators();
        if (rows > 0 && cols > 0) fblock[n] = sys.add_unknown(rows, cols);
    }
    for (int n = olo; n <= ohi; ++n) {
        if (!fblock.count(n)) continue;
        // well-definedness
        if (source.module_at(n).relations() > 0) {
            int eq = sys.add_equation(source.module_at(n).relations(),
                                      target.module_at(n).generators());
            sys.add_term_left(eq, fblock[n], source.module_at(n).presentation());
            if (target.module_at(n).relations() > 0) {
                int v = sys.add_unknown(source.module_at(n).relations(),
                                        target.module_at(n).relations());
                sys.add_term_right(eq, v, target.module_at(n).presentation().scaled(-1));
            }
        }
    }
    for (int n = olo - 1; n <= ohi; ++n) {
        // commuting square between degrees n and n+1
        int rows = source.module_at(n).generators();
        int cols = target.module_at(n + 1).generators();
        if (rows == 0 || cols == 0) continue;
        if (!fblock.count(n) && !fblock.count(n + 1)) continue;
        int eq = sys.add_equation(rows, cols);
        if (fblock.count(n)) sys.add_term_right(eq, fblock[n], target.diff_at(n).action());
        if (fblock.count(n + 1))
            sys.add_term(eq, fblock[n + 1], source.diff_at(n).action().scaled(-1),
                         Matrix::identity(ring, cols));
        if (target.module_at(n + 1).relations() > 0) {
            int w = sys.add_unknown(rows, target.module_at(n + 1).relations());
            sys.add_term_right(eq, w, target.module_at(n + 1).presentation().scaled(-1));
        }
    }
    auto sol = sys.solve();
    require(sol.solvable, "homogeneous chain-map system must be solvable");

    // Project generators to the F-blocks and close the solution group,
    // deduplicating by canonical morphism representatives.
    auto canonical_key = [&](const std::vector<Matrix>& fs) {
        std::vector<i64> key;
        for (int n = olo; n <= ohi; ++n) {
            const Matrix& f = fs[static_cast<size_t>(n - olo)];
            for (int i = 0; i < f.rows(); ++i) {
                Matrix r = target.module_at(n).canonical_rep(f.row(i));
                for (int j = 0; j < f.cols(); ++j) key.push_back(r.at(0, j));
            }
        }
        return key;
    };
    auto project = [&](const Matrix& flat, int row) {
        std::vector<Matrix> fs;
        for (int n = olo; n <= ohi; ++n) {
            int rows = source.module_at(n).generators();
            int cols = target.module_at(n).generators();
            if (fblock.count(n)) {
                Matrix m(ring, rows, cols);
                const Matrix full = sys.extract(flat, fblock[n], row);
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j) m.set(i, j, full.at(i, j));
                fs.push_back(m);
            } else {
                fs.push_back(Matrix::zero(ring, rows, cols));
            }
        }
        return fs;
    };

    std::vector<std::vector<Matrix>> gens;
    for (int i = 0; i < sol.kernel.rows(); ++i) gens.push_back(project(sol.kernel, i));

    std::map<std::vector<i64>, std::vector<Matrix>> group;
    std::vector<Matrix> zero;
    for (int n = olo; n <= ohi; ++n)
        zero.push_back(Matrix::zero(ring, source.module_at(n).generators(),
                                    target.module_at(n).generators()));
    group[canonical_key(zero)] = zero;
    std::vector<std::vector<Matrix>> frontier{zero};
    while (!frontier.empty()) {
        std::vector<std::vector<Matrix>> next;
        for (const auto& el : frontier)
            for (const auto& g : gens) {
                std::vector<Matrix> sum;
                for (size_t i = 0; i < el.size(); ++i) sum.push_back(el[i] + g[i]);
                auto key = canonical_key(sum);
                if (!group.count(key)) {
                    require(static_cast<i64>(group.size()) < module_config().max_enumeration,
                            "chain map enumeration exceeds the configured cap");
                    group[key] = sum;
                    next.push_back(std::move(sum));
                }
            }
        frontier = std::move(next);
    }

    std::vector<ChainMap> out;
    for (const auto& [key, fs] : group) {
        std::vector<ModuleMorphism> parts;
        for (int n = olo; n <= ohi; ++n)
            parts.emplace_back(source.module_at(n), target.module_at(n),
                               fs[static_cast<size_t>(n - olo)]);
        out.push_back(ChainMap::checked(source, target, std::move(parts), olo));
    }
    return out;
}

ComplexClassification classify(const ChainComplex& c, const ClassSpec& d, const ClassSpec& e,
                               const Universe& u) {
    require(c.ring() == u.ring, "classify ring mismatch");
    ComplexClassification r;
    r.entrywise_in_d = true;
    r.entrywise_in_e = true;
    r.exact = true;
    r.cycles_in_d = true;
    r.cycles_in_e = true;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const FPModule& m = c.module_at(n);
        if (!d.contains(m)) r.entrywise_in_d = false;
        if (!e.contains(m)) r.entrywise_in_e = false;
        HomologyData h = homology(c, n);
        if (!h.homology.is_zero_module()) r.exact = false;
        if (!d.contains(h.cycles)) r.cycles_in_d = false;
        if (!e.contains(h.cycles)) r.cycles_in_e = false;
    }
    r.is_tilde_d = r.exact && r.cycles_in_d;
    r.is_tilde_e = r.exact && r.cycles_in_e;
    r.is_dg_d = r.entrywise_in_d;  // finitely supported: entrywise suffices
    r.is_dg_e = r.entrywise_in_e;
    return r;
}

bool tilde_criterion_check(const ChainComplex& c, const ClassSpec& d, const ClassSpec& e,
                           const Universe& u) {
    auto em = e.members(u);
    for (int n = c.lo(); n <= c.hi(); ++n) {
        if (!homology(c, n).homology.is_zero_module()) return false;
        // c^n / B^n c = coker(d^{n-1})
        FPModule q = cokernel(c.diff_at(n - 1)).module;
        for (const auto& ee : em)
            if (!ext(1, q, ee).is_zero_module()) return false;
    }
    (void)d;
    return true;
}

MultiComplex::MultiComplex(int arity, Ring ring, std::vector<int> lo, std::vector<int> hi)
    : arity_(arity), ring_(std::move(ring)), lo_(std::move(lo)), hi_(std::move(hi)) {
    require(arity >= 1 && arity <= 5, "multicomplex arity out of range");
    require(lo_.size() == static_cast<size_t>(arity) && hi_.size() == lo_.size(),
            "multicomplex box shape mismatch");
    size_t cells = 1;
    for (int k = 0; k < arity; ++k) {
        require(lo_[k] <= hi_[k], "multicomplex empty axis");
        cells *= static_cast<size_t>(hi_[k] - lo_[k] + 1);
    }
    mods_.resize(cells);
    diffs_.resize(cells * static_cast<size_t>(arity));
}

size_t MultiComplex::flat(const std::vector<int>& idx) const {
    size_t f = 0;
    for (int k = 0; k < arity_; ++k) {
        require(idx[k] >= lo_[k] && idx[k] <= hi_[k], "multicomplex index out of box");
        f = f * static_cast<size_t>(hi_[k] - lo_[k] + 1) + static_cast<size_t>(idx[k] - lo_[k]);
    }
    return f;
}

void MultiComplex::set_module(const std::vector<int>& idx, FPModule m) {
    mods_[flat(idx)] = std::move(m);
}

void MultiComplex::set_diff(const std::vector<int>& idx, int axis, ModuleMorphism f) {
    diffs_[flat(idx) * arity_ + axis] = std::move(f);
}

const FPModule& MultiComplex::module(const std::vector<int>& idx) const {
    const auto& m = mods_[flat(idx)];
    require(m.has_value(), "multicomplex module not assigned");
    return *m;
}

const ModuleMorphism& MultiComplex::diff(const std::vector<int>& idx, int axis) const {
    const auto& d = diffs_[flat(idx) * arity_ + axis];
    require(d.has_value(), "multicomplex differential not assigned");
    return *d;
}

std::vector<std::vector<int>> MultiComplex::all_indices() const {
    std::vector<std::vector<int>> out;
    std::vector<int> idx = lo_;
    for (;;) {
        out.push_back(idx);
        int k = arity_ - 1;
        for (; k >= 0; --k) {
            if (++idx[k] <= hi_[k]) break;
            idx[k] = lo_[k];
        }
        if (k < 0) break;
    }
    return out;
}

void MultiComplex::validate() const {
    for (const auto& idx : all_indices()) {
        for (int k = 0; k < arity_; ++k) {
            if (idx[k] + 1 > hi_[k]) continue;
            std::vector<int> up = idx;
            up[k] += 1;
            const ModuleMorphism& d1 = diff(idx, k);
            if (idx[k] + 2 <= hi_[k])
                require(d1.then(diff(up, k)).is_zero_morphism(),
                        "multicomplex: directional differential does not square to zero");
            for (int l = k + 1; l < arity_; ++l) {
                if (idx[l] + 1 > hi_[l]) continue;
                std::vector<int> upl = idx;
                upl[l] += 1;
                require(diff(idx, k).then(diff(up, l)).equals(diff(idx, l).then(diff(upl, k))),
                        "multicomplex: directional differentials do not commute");
            }
        }
    }
}

namespace {

int index_sum(const std::vector<int>& idx) {
    int s = 0;
    for (int v : idx) s += v;
    return s;
}

i64 total_sign(const std::vector<int>& idx, int axis) {
    int s = 0;
    for (int k = 0; k < axis; ++k) s += idx[k];
    return (s % 2 == 0) ? 1 : -1;
}

}  // namespace

ChainComplex total_complex(const MultiComplex& mc, TotalFlavor flavor) {
    mc.validate();
    const Ring& ring = mc.ring();
    int tlo = index_sum(mc.lo());
    int thi = index_sum(mc.hi());
    auto all = mc.all_indices();
    std::vector<std::vector<std::vector<int>>> cells(static_cast<size_t>(thi - tlo + 1));
    for (const auto& idx : all) cells[static_cast<size_t>(index_sum(idx) - tlo)].push_back(idx);
    if (flavor == TotalFlavor::Product)
        for (auto& cs : cells) std::reverse(cs.begin(), cs.end());

    std::vector<FPModule> mods;
    std::vector<std::vector<int>> offsets(cells.size());
    for (size_t m = 0; m < cells.size(); ++m) {
        std::vector<FPModule> parts;
        int off = 0;
        for (const auto& idx : cells[m]) {
            offsets[m].push_back(off);
            parts.push_back(mc.module(idx));
            off += mc.module(idx).generators();
        }
        mods.push_back(direct_sum(parts).module);
    }
    std::vector<ModuleMorphism> diffs;
    for (size_t m = 0; m + 1 < cells.size(); ++m) {
        Matrix action(ring, mods[m].generators(), mods[m + 1].generators());
        for (size_t ci = 0; ci < cells[m].size(); ++ci) {
            const auto& idx = cells[m][ci];
            for (int k = 0; k < mc.arity(); ++k) {
                if (idx[k] + 1 > mc.hi()[k]) continue;
                std::vector<int> up = idx;
                up[k] += 1;
                auto it = std::find(cells[m + 1].begin(), cells[m + 1].end(), up);
                require(it != cells[m + 1].end(), "total complex: missing target cell");
                size_t ti = static_cast<size_t>(it - cells[m + 1].begin());
                Matrix block = mc.diff(idx, k).action().scaled(total_sign(idx, k));
                for (int i = 0; i < block.rows(); ++i)
                    for (int j = 0; j < block.cols(); ++j)
                        action.set(offsets[m][ci] + i, offsets[m + 1][ti] + j,
                                   action.at(offsets[m][ci] + i, offsets[m + 1][ti] + j) +
                                       block.at(i, j));
            }
        }
        diffs.emplace_back(mods[m], mods[m + 1], action);
    }
    return ChainComplex::checked(ring, tlo, std::move(mods), std::move(diffs));
}

bool total_flavors_agree(const MultiComplex& mc) {
    ChainComplex sum = total_complex(mc, TotalFlavor::Sum);
    ChainComplex prod = total_complex(mc, TotalFlavor::Product);
    // degreewise permutation matrices between the two cell orders
    int tlo = sum.lo();
    int thi = sum.hi();
    auto all = mc.all_indices();
    std::vector<ModuleMorphism> perms;
    for (int m = tlo; m <= thi; ++m) {
        std::vector<std::vector<int>> asc;
        for (const auto& idx : all)
            if (index_sum(idx) == m) asc.push_back(idx);
        std::vector<std::vector<int>> desc = asc;
        std::reverse(desc.begin(), desc.end());
        Matrix p(mc.ring(), sum.module_at(m).generators(), prod.module_at(m).generators());
        int roff = 0;
        for (const auto& idx : asc) {
            int coff = 0;
            for (const auto& jdx : desc) {
                if (jdx == idx) break;
                coff += mc.module(jdx).generators();
            }
            for (int i = 0; i < mc.module(idx).generators(); ++i) p.set(roff + i, coff + i, 1);
            roff += mc.module(idx).generators();
        }
        perms.emplace_back(sum.module_at(m), prod.module_at(m), p);
    }
    for (int m = tlo; m < thi; ++m) {
        const ModuleMorphism& pm = perms[static_cast<size_t>(m - tlo)];
        const ModuleMorphism& pm1 = perms[static_cast<size_t>(m + 1 - tlo)];
        if (!sum.diff_at(m).then(pm1).equals(pm.then(prod.diff_at(m)))) return false;
        if (!is_monic(pm) || !is_epic(pm)) return false;
    }
    return true;
}

MultiComplex lift_functor(const AdjunctionPtr& ma, const std::vector<ChainComplex>& inputs) {
    int n = ma->arity();
    require(static_cast<int>(inputs.size()) == n, "lift_functor arity mismatch");
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = inputs[i].lo();
        hi[i] = inputs[i].hi();
    }
    MultiComplex mc(n, ma->result_ring(), lo, hi);
    for (const auto& idx : mc.all_indices()) {
        std::vector<FPModule> slots;
        for (int i = 0; i < n; ++i) slots.push_back(inputs[i].module_at(idx[i]));
        mc.set_module(idx, ma->apply(slots));
        for (int k = 0; k < n; ++k) {
            if (idx[k] + 1 > hi[k]) continue;
            std::vector<ModuleMorphism> maps;
            for (int i = 0; i < n; ++i)
                maps.push_back(i == k ? inputs[i].diff_at(idx[i])
                                      : ModuleMorphism::identity(inputs[i].module_at(idx[i])));
            mc.set_diff(idx, k, ma->map(maps));
        }
    }
    return mc;
}

ChainComplex lift_functor_total(const AdjunctionPtr& ma, const std::vector<ChainComplex>& inputs) {
    return total_complex(lift_functor(ma, inputs), TotalFlavor::Sum);
}

MultiComplex lift_adjoint(const AdjunctionPtr& ma, int j, const std::vector<ChainComplex>& others,
                          const ChainComplex& a0) {
    int n = ma->arity();
    require(static_cast<int>(others.size()) == n - 1, "lift_adjoint others arity mismatch");
    int axes = n;  // n-1 contravariant axes plus the a0 axis (last)
    std::vector<int> lo(axes), hi(axes);
    for (int i = 0; i < n - 1; ++i) {
        lo[i] = -others[i].hi();
        hi[i] = -others[i].lo();
    }
    lo[axes - 1] = a0.lo();
    hi[axes - 1] = a0.hi();
    MultiComplex mc(axes, ma->result_ring(), lo, hi);
    for (const auto& idx : mc.all_indices()) {
        std::vector<FPModule> other_mods;
        for (int i = 0; i < n - 1; ++i) other_mods.push_back(others[i].module_at(-idx[i]));
        mc.set_module(idx, ma->adjoint(j, other_mods, a0.module_at(idx[axes - 1])));
        for (int k = 0; k < axes; ++k) {
            if (idx[k] + 1 > hi[k]) continue;
            std::vector<ModuleMorphism> omaps;
            for (int i = 0; i < n - 1; ++i)
                omaps.push_back(i == k ? others[i].diff_at(-idx[i] - 1)
                                       : ModuleMorphism::identity(others[i].module_at(-idx[i])));
            ModuleMorphism g0 = (k == axes - 1)
                                    ? a0.diff_at(idx[axes - 1])
                                    : ModuleMorphism::identity(a0.module_at(idx[axes - 1]));
            mc.set_diff(idx, k, ma->adjoint_map(j, omaps, g0));
        }
    }
    return mc;
}

ChainComplex lift_adjoint_total(const AdjunctionPtr& ma, int j,
                                const std::vector<ChainComplex>& others, const ChainComplex& a0) {
    return total_complex(lift_adjoint(ma, j, others, a0), TotalFlavor::Product);
}

ComplexSES ComplexSES::checked(ChainComplex sub, ChainComplex mid, ChainComplex quot, ChainMap inj,
                               ChainMap surj) {
    require(is_exact_sequence(sub, mid, quot, inj, surj), "complex ses: not degreewise exact");
    ComplexSES s;
    s.sub = std::move(sub);
    s.mid = std::move(mid);
    s.quot = std::move(quot);
    s.inj = std::move(inj);
    s.surj = std::move(surj);
    return s;
}

bool is_exact_sequence(const ChainComplex& sub, const ChainComplex& mid, const ChainComplex& quot,
                       const ChainMap& inj, const ChainMap& surj) {
    int lo = std::min({sub.lo(), mid.lo(), quot.lo()});
    int hi = std::max({sub.hi(), mid.hi(), quot.hi()});
    for (int n = lo; n <= hi; ++n) {
        ModuleMorphism i = inj.at(n), s = surj.at(n);
        if (!is_monic(i) || !is_epic(s) || !is_exact_pair(i, s)) return false;
    }
    return true;
}

ComplexSES disc_extension(const ChainComplex& x, int n, const FPModule& m,
                          const ModuleMorphism& cls) {
    const Ring& ring = x.ring();
    ShortExactSequence es = realize_extension(m, x.module_at(n), cls);
    PushoutResult po = pushout(x.diff_at(n), es.inj);

    int lo = std::min(x.lo(), n);
    int hi = std::max(x.hi(), n + 1);
    std::vector<FPModule> mods;
    for (int i = lo; i <= hi; ++i) {
        if (i == n)
            mods.push_back(es.mid);
        else if (i == n + 1)
            mods.push_back(po.module);
        else
            mods.push_back(x.module_at(i));
    }
    std::vector<ModuleMorphism> diffs;
    for (int i = lo; i < hi; ++i) {
        const FPModule& src = mods[static_cast<size_t>(i - lo)];
        const FPModule& tgt = mods[static_cast<size_t>(i + 1 - lo)];
        if (i == n - 1)
            diffs.emplace_back(src, tgt, x.diff_at(n - 1).action() * es.inj.action());
        else if (i == n)
            diffs.emplace_back(src, tgt, po.from_c.action());
        else if (i == n + 1)
            diffs.emplace_back(
                src, tgt,
                Matrix::vstack(x.diff_at(n + 1).action(),
                               Matrix::zero(ring, es.mid.generators(),
                                            x.module_at(n + 2).generators())));
        else
            diffs.emplace_back(src, tgt, x.diff_at(i).action());
    }
    ChainComplex y = ChainComplex::checked(ring, lo, mods, diffs);
    ChainComplex q = elementary_complex(ElementaryKind::Disc, n, m);
    ChainComplex xs = x.padded_to(lo, hi);

    std::vector<ModuleMorphism> injparts, surjparts;
    for (int i = lo; i <= hi; ++i) {
        if (i == n) {
            injparts.emplace_back(xs.module_at(i), y.module_at(i), es.inj.action());
            surjparts.emplace_back(y.module_at(i), q.module_at(i), es.surj.action());
        } else if (i == n + 1) {
            injparts.emplace_back(xs.module_at(i), y.module_at(i), po.from_b.action());
            surjparts.emplace_back(
                y.module_at(i), q.module_at(i),
                Matrix::vstack(Matrix::zero(ring, x.module_at(n + 1).generators(), m.generators()),
                               es.surj.action()));
        } else {
            injparts.push_back(ModuleMorphism::identity(y.module_at(i)));
            injparts.back() = ModuleMorphism(xs.module_at(i), y.module_at(i),
                                             injparts.back().action());
            surjparts.push_back(ModuleMorphism::zero(y.module_at(i), q.module_at(i)));
        }
    }
    ChainMap inj = ChainMap::checked(xs, y, injparts, lo);
    ChainMap surj = ChainMap::checked(y, q, surjparts, lo);
    return ComplexSES::checked(xs, y, q, inj, surj);
}

std::optional<ComplexSES> sphere_extension(const ChainComplex& x, int n, const FPModule& m,
                                           const ModuleMorphism& cls) {
    const Ring& ring = x.ring();
    ShortExactSequence es = realize_extension(m, x.module_at(n), cls);
    const FPModule& e = es.mid;
    const FPModule& xn1 = x.module_at(n + 1);
    const FPModule& xn2 = x.module_at(n + 2);

    BlockSystem sys(ring);
    int dv = sys.add_unknown(e.generators(), xn1.generators());
    {
        int eq = sys.add_equation(x.module_at(n).generators(), xn1.generators());
        sys.add_term_left(eq, dv, es.inj.action());
        if (xn1.relations() > 0) {
            int w = sys.add_unknown(x.module_at(n).generators(), xn1.relations());
            sys.add_term_right(eq, w, xn1.presentation().scaled(-1));
        }
        sys.set_rhs(eq, x.diff_at(n).action());
    }
    if (e.relations() > 0) {
        int eq = sys.add_equation(e.relations(), xn1.generators());
        sys.add_term_left(eq, dv, e.presentation());
        if (xn1.relations() > 0) {
            int v = sys.add_unknown(e.relations(), xn1.relations());
            sys.add_term_right(eq, v, xn1.presentation().scaled(-1));
        }
    }
    if (xn2.generators() > 0) {
        int eq = sys.add_equation(e.generators(), xn2.generators());
        sys.add_term_right(eq, dv, x.diff_at(n + 1).action());
        if (xn2.relations() > 0) {
            int w = sys.add_unknown(e.generators(), xn2.relations());
            sys.add_term_right(eq, w, xn2.presentation().scaled(-1));
        }
    }
    auto sol = sys.solve();
    if (!sol.solvable) return std::nullopt;
    Matrix d_action = sys.extract(sol.particular, dv);

    int lo = std::min(x.lo(), n);
    int hi = std::max(x.hi(), n);
    std::vector<FPModule> mods;
    for (int i = lo; i <= hi; ++i) mods.push_back(i == n ? e : x.module_at(i));
    std::vector<ModuleMorphism> diffs;
    for (int i = lo; i < hi; ++i) {
        const FPModule& src = mods[static_cast<size_t>(i - lo)];
        const FPModule& tgt = mods[static_cast<size_t>(i + 1 - lo)];
        if (i == n - 1)
            diffs.emplace_back(src, tgt, x.diff_at(n - 1).action() * es.inj.action());
        else if (i == n)
            diffs.emplace_back(src, tgt, d_action);
        else
            diffs.emplace_back(src, tgt, x.diff_at(i).action());
    }
    ChainComplex y = ChainComplex::checked(ring, lo, mods, diffs);
    ChainComplex q = elementary_complex(ElementaryKind::Sphere, n, m);
    ChainComplex xs = x.padded_to(lo, hi);

    std::vector<ModuleMorphism> injparts, surjparts;
    for (int i = lo; i <= hi; ++i) {
        if (i == n) {
            injparts.emplace_back(xs.module_at(i), y.module_at(i), es.inj.action());
            surjparts.emplace_back(y.module_at(i), q.module_at(i), es.surj.action());
        } else {
            injparts.emplace_back(xs.module_at(i), y.module_at(i),
                                  Matrix::identity(ring, xs.module_at(i).generators()));
            surjparts.push_back(ModuleMorphism::zero(y.module_at(i), q.module_at(i)));
        }
    }
    ChainMap inj = ChainMap::checked(xs, y, injparts, lo);
    ChainMap surj = ChainMap::checked(y, q, surjparts, lo);
    return ComplexSES::checked(xs, y, q, inj, surj);
}

ComplexSES twisted_split_extension(const ChainComplex& a, const ChainComplex& d, Rng& rng) {
    const Ring& ring = a.ring();
    int lo = std::min(a.lo(), d.lo());
    int hi = std::max(a.hi(), d.hi());
    ChainComplex ap = a.padded_to(lo, hi);
    ChainComplex dp = d.padded_to(lo, hi);

    // Solve the anti-chain-map constraint phi^i d_A^{i+1} + d_D^i phi^{i+1} = 0.
    BlockSystem sys(ring);
    std::map<int, int> pblock;
    for (int i = lo; i < hi; ++i) {
        int rows = dp.module_at(i).generators();
        int cols = ap.module_at(i + 1).generators();
        if (rows > 0 && cols > 0) pblock[i] = sys.add_unknown(rows, cols);
    }
    for (int i = lo; i < hi; ++i) {
        if (pblock.count(i) && dp.module_at(i).relations() > 0) {
            int eq = sys.add_equation(dp.module_at(i).relations(),
                                      ap.module_at(i + 1).generators());
            sys.add_term_left(eq, pblock[i], dp.module_at(i).presentation());
            if (ap.module_at(i + 1).relations() > 0) {
                int v = sys.add_unknown(dp.module_at(i).relations(), ap.module_at(i + 1).relations());
                sys.add_term_right(eq, v, ap.module_at(i + 1).presentation().scaled(-1));
            }
        }
        int rows = dp.module_at(i).generators();
        int cols = ap.module_at(i + 2).generators();
        if (rows == 0 || cols == 0) continue;
        int eq = sys.add_equation(rows, cols);
        if (pblock.count(i)) sys.add_term_right(eq, pblock[i], ap.diff_at(i + 1).action());
        if (pblock.count(i + 1))
            sys.add_term(eq, pblock[i + 1], dp.diff_at(i).action(),
                         Matrix::identity(ring, cols));
        if (ap.module_at(i + 2).relations() > 0) {
            int w = sys.add_unknown(rows, ap.module_at(i + 2).relations());
            sys.add_term_right(eq, w, ap.module_at(i + 2).presentation().scaled(-1));
        }
    }
    auto sol = sys.solve();
    require(sol.solvable, "twist system must be solvable");
    // seeded random solution: random combination of kernel generators
    Matrix flat = sol.particular;  // zero row
    for (int i = 0; i < sol.kernel.rows(); ++i) {
        i64 cc = rng.below(ring.modulus());
        if (cc) flat = flat + sol.kernel.row(i).scaled(cc);
    }

    std::vector<FPModule> mods;
    std::vector<DirectSum> sums;
    for (int i = lo; i <= hi; ++i) {
        sums.push_back(direct_sum({ap.module_at(i), dp.module_at(i)}));
        mods.push_back(sums.back().module);
    }
    std::vector<ModuleMorphism> diffs;
    for (int i = lo; i < hi; ++i) {
        int ra = ap.module_at(i).generators(), rd = dp.module_at(i).generators();
        int ca = ap.module_at(i + 1).generators(), cd = dp.module_at(i + 1).generators();
        Matrix action(ring, ra + rd, ca + cd);
        Matrix da = ap.diff_at(i).action();
        Matrix dd = dp.diff_at(i).action();
        for (int r = 0; r < ra; ++r)
            for (int cidx = 0; cidx < ca; ++cidx) action.set(r, cidx, da.at(r, cidx));
        for (int r = 0; r < rd; ++r)
            for (int cidx = 0; cidx < cd; ++cidx) action.set(ra + r, ca + cidx, dd.at(r, cidx));
        if (pblock.count(i)) {
            Matrix phi = sys.extract(flat, pblock[i]);
            for (int r = 0; r < rd; ++r)
                for (int cidx = 0; cidx < ca; ++cidx) action.set(ra + r, cidx, phi.at(r, cidx));
        }
        diffs.emplace_back(mods[static_cast<size_t>(i - lo)], mods[static_cast<size_t>(i + 1 - lo)],
                           action);
    }
    ChainComplex b = ChainComplex::checked(ring, lo, mods, diffs);

    std::vector<ModuleMorphism> injparts, surjparts;
    for (int i = lo; i <= hi; ++i) {
        const DirectSum& s = sums[static_cast<size_t>(i - lo)];
        injparts.emplace_back(ap.module_at(i), b.module_at(i), s.injections[0].action());
        surjparts.emplace_back(b.module_at(i), dp.module_at(i), s.projections[1].action());
    }
    ChainMap inj = ChainMap::checked(ap, b, injparts, lo);
    ChainMap surj = ChainMap::checked(b, dp, surjparts, lo);
    return ComplexSES::checked(ap, b, dp, inj, surj);
}

LiftedSequence lift_ses(const AdjunctionPtr& ma, int slot, const ComplexSES& s,
                        const std::vector<ChainComplex>& others) {
    int n = ma->arity();
    require(slot >= 0 && slot < n, "lift_ses slot out of range");
    require(static_cast<int>(others.size()) == n - 1, "lift_ses others arity mismatch");
    int lo = std::min({s.sub.lo(), s.mid.lo(), s.quot.lo()});
    int hi = std::max({s.sub.hi(), s.mid.hi(), s.quot.hi()});
    ChainComplex sub = s.sub.padded_to(lo, hi);
    ChainComplex mid = s.mid.padded_to(lo, hi);
    ChainComplex quot = s.quot.padded_to(lo, hi);

    auto tuple_with = [&](const ChainComplex& c) {
        std::vector<ChainComplex> t;
        int oi = 0;
        for (int i = 0; i < n; ++i) {
            if (i == slot)
                t.push_back(c);
            else
                t.push_back(others[oi++]);
        }
        return t;
    };
    MultiComplex msub = lift_functor(ma, tuple_with(sub));
    MultiComplex mmid = lift_functor(ma, tuple_with(mid));
    MultiComplex mquot = lift_functor(ma, tuple_with(quot));
    LiftedSequence r;
    r.sub = total_complex(msub, TotalFlavor::Sum);
    r.mid = total_complex(mmid, TotalFlavor::Sum);
    r.quot = total_complex(mquot, TotalFlavor::Sum);

    auto build_map = [&](const MultiComplex& from_mc, const MultiComplex& to_mc,
                         const ChainComplex& from_tot, const ChainComplex& to_tot,
                         const ChainMap& component) {
        int tlo = from_tot.lo(), thi = from_tot.hi();
        std::vector<ModuleMorphism> parts;
        for (int m = tlo; m <= thi; ++m) {
            std::vector<std::vector<int>> cs;
            for (const auto& idx : from_mc.all_indices())
                if (index_sum(idx) == m) cs.push_back(idx);
            Matrix action(ma->result_ring(), from_tot.module_at(m).generators(),
                          to_tot.module_at(m).generators());
            int roff = 0;
            for (const auto& idx : cs) {
                int coff = 0;
                for (const auto& jdx : cs) {
                    if (jdx == idx) break;
                    coff += to_mc.module(jdx).generators();
                }
                std::vector<ModuleMorphism> maps;
                int oi = 0;
                for (int i = 0; i < n; ++i) {
                    if (i == slot)
                        maps.push_back(component.at(idx[i]));
                    else {
                        maps.push_back(ModuleMorphism::identity(others[oi].module_at(idx[i])));
                        ++oi;
                    }
                }
                Matrix block = ma->map(maps).action();
                for (int i = 0; i < block.rows(); ++i)
                    for (int j = 0; j < block.cols(); ++j)
                        action.set(roff + i, coff + j, block.at(i, j));
                roff += from_mc.module(idx).generators();
            }
            parts.emplace_back(from_tot.module_at(m), to_tot.module_at(m), action);
        }
        return ChainMap::checked(from_tot, to_tot, parts, tlo);
    };
    r.inj = build_map(msub, mmid, r.sub, r.mid, s.inj);
    r.surj = build_map(mmid, mquot, r.mid, r.quot, s.surj);
    return r;
}

// --- samplers ---

namespace {

std::vector<FPModule> nonzero_members(const ClassSpec& cls, const Universe& u) {
    std::vector<FPModule> out;
    for (const auto& m : cls.members(u))
        if (!m.is_zero_module()) out.push_back(m);
    require(!out.empty(), "sampler: the class has no nonzero members in the universe");
    return out;
}

// Random well-defined d_i with composite-zero constraint against prev.
std::optional<ModuleMorphism> random_next_diff(Rng& rng, const FPModule& src, const FPModule& tgt,
                                               const std::optional<ModuleMorphism>& prev) {
    const Ring& ring = src.ring();
    BlockSystem sys(ring);
    int dv = sys.add_unknown(src.generators(), tgt.generators());
    if (src.relations() > 0) {
        int eq = sys.add_equation(src.relations(), tgt.generators());
        sys.add_term_left(eq, dv, src.presentation());
        if (tgt.relations() > 0) {
            int v = sys.add_unknown(src.relations(), tgt.relations());
            sys.add_term_right(eq, v, tgt.presentation().scaled(-1));
        }
    }
    if (prev) {
        int eq = sys.add_equation(prev->source().generators(), tgt.generators());
        sys.add_term_left(eq, dv, prev->action());
        if (tgt.relations() > 0) {
            int w = sys.add_unknown(prev->source().generators(), tgt.relations());
            sys.add_term_right(eq, w, tgt.presentation().scaled(-1));
        }
    }
    auto sol = sys.solve();
    if (!sol.solvable) return std::nullopt;
    Matrix flat = sol.particular;
    for (int i = 0; i < sol.kernel.rows(); ++i) {
        i64 cc = rng.below(ring.modulus());
        if (cc) flat = flat + sol.kernel.row(i).scaled(cc);
    }
    return ModuleMorphism(src, tgt, sys.extract(flat, dv));
}

// Random automorphism by rejection; falls back to the identity.
ModuleMorphism random_automorphism(Rng& rng, const FPModule& m) {
    HomModule h = hom_module(m, m);
    for (int tries = 0; tries < 12; ++tries) {
        std::vector<i64> coords(h.module.generators());
        for (auto& c : coords) c = rng.below(m.ring().modulus());
        ModuleMorphism f = h.to_morphism(Matrix(m.ring(), 1, h.module.generators(), coords));
        if (is_monic(f) && is_epic(f)) return f;
    }
    return ModuleMorphism::identity(m);
}

ModuleMorphism random_ext_class(Rng& rng, const FPModule& d, const FPModule& x) {
    Ext1Classes e = ext1_classes(d, x);
    std::vector<i64> coords(e.module.generators());
    for (auto& c : coords) c = rng.below(d.ring().modulus());
    return e.class_rep(Matrix(d.ring(), 1, e.module.generators(), coords));
}

}  // namespace

std::vector<ChainComplex> sample_entrywise_complexes(const ClassSpec& cls, const Universe& u,
                                                     Rng& rng, int count, int max_len) {
    auto members = nonzero_members(cls, u);
    std::vector<ChainComplex> out;
    while (static_cast<int>(out.size()) < count) {
        int kind = static_cast<int>(rng.below(3));
        int deg = static_cast<int>(rng.below(3)) - 1;
        if (kind == 0) {
            out.push_back(elementary_complex(ElementaryKind::Sphere, deg, rng.pick(members)));
        } else if (kind == 1) {
            out.push_back(elementary_complex(ElementaryKind::Disc, deg, rng.pick(members)));
        } else {
            int len = 2 + static_cast<int>(rng.below(std::max(1, max_len - 1)));
            std::vector<FPModule> mods;
            for (int i = 0; i < len; ++i) mods.push_back(rng.pick(members));
            std::vector<ModuleMorphism> diffs;
            std::optional<ModuleMorphism> prev;
            bool ok = true;
            for (int i = 0; i + 1 < len; ++i) {
                auto d = random_next_diff(rng, mods[i], mods[i + 1], prev);
                if (!d) {
                    ok = false;
                    break;
                }
                diffs.push_back(*d);
                prev = *d;
            }
            if (!ok) continue;
            out.push_back(ChainComplex::checked(u.ring, deg, std::move(mods), std::move(diffs)));
        }
    }
    return out;
}

std::vector<ChainComplex> sample_tilde_complexes(const ClassSpec& cls, const Universe& u, Rng& rng,
                                                 int count, int max_len) {
    auto members = nonzero_members(cls, u);
    std::vector<ChainComplex> out;
    while (static_cast<int>(out.size()) < count) {
        int discs = 1 + static_cast<int>(rng.below(std::max(1, max_len - 1)));
        std::vector<ChainComplex> parts;
        for (int i = 0; i < discs; ++i) {
            int deg = static_cast<int>(rng.below(3)) - 1;
            parts.push_back(elementary_complex(ElementaryKind::Disc, deg, rng.pick(members)));
        }
        ChainComplex sum = direct_sum_complex(parts);
        // twist by degreewise automorphisms; exactness and cycles survive
        std::vector<FPModule> mods;
        std::vector<ModuleMorphism> autos;
        for (int ni = sum.lo(); ni <= sum.hi(); ++ni) {
            mods.push_back(sum.module_at(ni));
            autos.push_back(random_automorphism(rng, sum.module_at(ni)));
        }
        std::vector<ModuleMorphism> diffs;
        for (int ni = sum.lo(); ni < sum.hi(); ++ni) {
            const ModuleMorphism& un = autos[static_cast<size_t>(ni - sum.lo())];
            const ModuleMorphism& un1 = autos[static_cast<size_t>(ni + 1 - sum.lo())];
            // d' = u_n^{-1} d u_{n+1}
            ModuleMorphism dprime = inverse_of_iso(un).then(sum.diff_at(ni)).then(un1);
            diffs.emplace_back(mods[static_cast<size_t>(ni - sum.lo())],
                               mods[static_cast<size_t>(ni + 1 - sum.lo())], dprime.action());
        }
        out.push_back(ChainComplex::checked(u.ring, sum.lo(), std::move(mods), std::move(diffs)));
    }
    return out;
}

std::vector<ComplexSES> sample_ses_with_dg_cokernel(const ClassSpec& cls, const Universe& u,
                                                    Rng& rng, int count) {
    auto members = nonzero_members(cls, u);
    ClassSpec everything = ClassSpec::all(u.ring);
    std::vector<ComplexSES> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && ++guard < count * 30) {
        int kind = static_cast<int>(rng.below(3));
        ChainComplex x = sample_entrywise_complexes(everything, u, rng, 1, 3).front();
        if (kind == 0) {
            int deg = x.lo() + static_cast<int>(rng.below(x.length()));
            const FPModule& m = rng.pick(members);
            out.push_back(disc_extension(x, deg, m, random_ext_class(rng, m, x.module_at(deg))));
        } else if (kind == 1) {
            int deg = x.lo() + static_cast<int>(rng.below(x.length()));
            const FPModule& m = rng.pick(members);
            auto s = sphere_extension(x, deg, m, random_ext_class(rng, m, x.module_at(deg)));
            if (s) out.push_back(*s);
        } else {
            ChainComplex d = sample_entrywise_complexes(cls, u, rng, 1, 3).front();
            out.push_back(twisted_split_extension(x, d, rng));
        }
    }
    require(static_cast<int>(out.size()) == count, "dg cokernel sampler starved");
    return out;
}

std::vector<ComplexSES> sample_ses_with_tilde_cokernel(const ClassSpec& cls, const Universe& u,
                                                       Rng& rng, int count) {
    auto members = nonzero_members(cls, u);
    ClassSpec everything = ClassSpec::all(u.ring);
    std::vector<ComplexSES> out;
    while (static_cast<int>(out.size()) < count) {
        if (rng.below(2) == 0) {
            ChainComplex x = sample_entrywise_complexes(everything, u, rng, 1, 3).front();
            int deg = x.lo() + static_cast<int>(rng.below(x.length()));
            const FPModule& m = rng.pick(members);
            out.push_back(disc_extension(x, deg, m, random_ext_class(rng, m, x.module_at(deg))));
        } else {
            ChainComplex x = sample_entrywise_complexes(everything, u, rng, 1, 3).front();
            ChainComplex d = sample_tilde_complexes(cls, u, rng, 1, 3).front();
            out.push_back(twisted_split_extension(x, d, rng));
        }
    }
    return out;
}

}  // namespace cotlab
