#include "puremin/minimality.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace puremin {

std::string to_string(TriBool t) {
    switch (t) {
        case TriBool::yes: return "yes";
        case TriBool::no: return "no";
        default: return "unknown";
    }
}

namespace {

int floor_mod(int a, int q) { return ((a % q) + q) % q; }

bool has_unit(const RingSpec& R, const std::vector<RingElem>& divisors) {
    for (const RingElem& d : divisors)
        if (R.is_unit(d)) return true;
    return false;
}

// identity matrix with `sub` scattered over the listed coordinates
Matrix embed_on(const RingSpec& R, int n, const std::vector<int>& coords, const Matrix& sub) {
    Matrix out = Matrix::identity(R, n);
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = 0; j < coords.size(); ++j)
            out.set(coords[i], coords[j], sub.at(static_cast<int>(i), static_cast<int>(j)));
    return out;
}

Matrix lift_matrix(const RingSpec& big, const Matrix& small) {
    if (small.ring() == big) return small;
    Matrix out(big, small.rows(), small.cols());
    for (int i = 0; i < small.rows(); ++i)
        for (int j = 0; j < small.cols(); ++j) out.set(i, j, big.from_int(small.at(i, j).num));
    return out;
}

/// Diagonal relation coefficients per generator when the presentation is
/// "at most one relation m * e_i per generator"; zero marks a free generator.
std::optional<std::vector<RingElem>> diagonal_moduli(const FPModule& m) {
    const RingSpec& R = m.ring();
    std::vector<RingElem> out(m.generators(), R.zero());
    std::vector<bool> seen(m.generators(), false);
    const Matrix& rel = m.relations();
    for (int j = 0; j < rel.cols(); ++j) {
        int row = -1;
        for (int i = 0; i < rel.rows(); ++i) {
            if (R.is_zero(rel.at(i, j))) continue;
            if (row >= 0) return std::nullopt;
            row = i;
        }
        if (row < 0) continue;  // zero column carries no information
        if (seen[row]) return std::nullopt;
        seen[row] = true;
        out[row] = rel.at(row, j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// elimination engine: free modules over one ring, bounded or periodic
// ---------------------------------------------------------------------------

struct Engine {
    RingSpec R;
    bool periodic = false;
    int q = 0;            // number of indices
    int base_degree = 0;  // degree of index 0 when bounded
    std::vector<int> rank;
    std::vector<Matrix> T, Tinv;
    std::vector<std::vector<bool>> alive;
    // D[k]: index k -> k-1 (bounded: k >= 1, D[0] is a placeholder)
    std::vector<Matrix> D;

    struct Pivot {
        int idx;
        int row, col;
        RingElem unit;
    };
    std::vector<Pivot> pivots;
    std::vector<ReductionMove> moves;
    std::string component_tag;

    int degree_of(int idx) const { return periodic ? idx : base_degree + idx; }
    int wrap(int idx) const { return periodic ? floor_mod(idx, q) : idx; }
    bool has_diff(int idx) const { return periodic ? q > 0 : (idx >= 1 && idx < q); }

    std::vector<int> alive_list(int idx) const {
        std::vector<int> out;
        for (int i = 0; i < rank[idx]; ++i)
            if (alive[idx][i]) out.push_back(i);
        return out;
    }

    void apply_change(int idx, const Matrix& V, const Matrix& Vinv) {
        T[idx] = V * T[idx];
        Tinv[idx] = Tinv[idx] * Vinv;
        if (has_diff(idx)) D[wrap(idx)] = D[wrap(idx)] * Vinv;          // source side
        if (has_diff(idx + 1)) D[wrap(idx + 1)] = V * D[wrap(idx + 1)];  // target side
    }

    Matrix alive_submatrix(int idx_diff) const {
        const Matrix& d = D[wrap(idx_diff)];
        return d.select_rows(alive_list(wrap(idx_diff - 1))).select_cols(alive_list(idx_diff));
    }

    void check_split_clean(int idx, int row, int col) const {
        const Matrix& d = D[wrap(idx)];
        for (int i : alive_list(wrap(idx - 1)))
            if (i != row && !R.is_zero(d.at(i, col)))
                throw std::logic_error("pivot column not cleared");
        for (int j : alive_list(idx))
            if (j != col && !R.is_zero(d.at(row, j)))
                throw std::logic_error("pivot row not cleared");
        if (has_diff(idx + 1)) {
            const Matrix& up = D[wrap(idx + 1)];
            for (int j : alive_list(wrap(idx + 1)))
                if (!R.is_zero(up.at(col, j)))
                    throw std::logic_error("incoming differential misses the dead source");
        }
        if (has_diff(idx - 1)) {
            const Matrix& dn = D[wrap(idx - 1)];
            for (int i : alive_list(wrap(idx - 2)))
                if (!R.is_zero(dn.at(i, row)))
                    throw std::logic_error("outgoing differential misses the dead target");
        }
    }

    void split_pivot(int idx, int row, int col) {
        check_split_clean(idx, row, col);
        RingElem u = D[wrap(idx)].at(row, col);
        if (!R.is_unit(u)) throw std::logic_error("pivot is not a unit");
        alive[idx][col] = false;
        alive[wrap(idx - 1)][row] = false;
        pivots.push_back(Pivot{idx, row, col, u});
    }

    void record_move(int idx, Matrix v, Matrix vinv, Matrix u, Matrix uinv,
                     std::vector<std::pair<int, int>> pivs) {
        moves.push_back(ReductionMove{degree_of(idx), component_tag, std::move(v),
                                      std::move(vinv), std::move(u), std::move(uinv),
                                      std::move(pivs)});
    }

    // diagonalize one differential and split every unit divisor
    int eliminate_at(int idx) {
        int made = 0;
        for (;;) {
            Matrix A = alive_submatrix(idx);
            if (A.rows() == 0 || A.cols() == 0) break;
            SmithResult s = smith_normal_form(A);
            if (!has_unit(R, s.divisors)) break;
            int tgt = wrap(idx - 1);
            std::vector<int> arows = alive_list(tgt);
            std::vector<int> acols = alive_list(idx);
            Matrix U = embed_on(R, rank[tgt], arows, s.U);
            Matrix Uinv = embed_on(R, rank[tgt], arows, s.U_inv);
            Matrix V = embed_on(R, rank[idx], acols, s.V);
            Matrix Vinv = embed_on(R, rank[idx], acols, s.V_inv);
            apply_change(tgt, U, Uinv);
            apply_change(idx, Vinv, V);
            std::vector<std::pair<int, int>> pivs;
            for (size_t k = 0; k < s.divisors.size(); ++k)
                if (R.is_unit(s.divisors[k])) {
                    split_pivot(idx, arows[k], acols[k]);
                    pivs.emplace_back(arows[k], acols[k]);
                    ++made;
                }
            record_move(idx, Vinv, V, U, Uinv, std::move(pivs));
        }
        return made;
    }

    // --- period one: every basis change is a conjugation ---

    void conjugate(const Matrix& G, const Matrix& Ginv, Matrix* acc, Matrix* acc_inv) {
        apply_change(0, G, Ginv);
        *acc = G * *acc;
        *acc_inv = *acc_inv * Ginv;
    }

    // turn a unit elementary divisor into an explicit off-diagonal unit entry
    void expose_offdiag_unit(Matrix* acc, Matrix* acc_inv) {
        std::vector<int> coords = alive_list(0);
        Matrix A = alive_submatrix(0);
        SmithResult s = smith_normal_form(A);
        if (!has_unit(R, s.divisors)) throw std::logic_error("nothing to expose");
        const int a = A.rows();
        // x with A x == w, w unimodular and in the kernel of A
        Matrix x = s.V.take_cols(0, 1).scaled(R.inverse_of_unit(s.divisors[0]));
        Matrix w = A * x;

        // make w the first alive coordinate
        SmithResult sw = smith_normal_form(w);
        if (sw.divisors.empty() || !R.is_unit(sw.divisors[0]))
            throw std::logic_error("kernel vector is not unimodular");
        Matrix scale = Matrix::identity(R, a);
        Matrix scale_inv = Matrix::identity(R, a);
        scale.set(0, 0, R.inverse_of_unit(sw.divisors[0]));
        scale_inv.set(0, 0, sw.divisors[0]);
        Matrix G1 = scale * sw.U;
        Matrix G1inv = sw.U_inv * scale_inv;
        conjugate(embed_on(R, rank[0], coords, G1), embed_on(R, rank[0], coords, G1inv), acc,
                  acc_inv);
        x = G1 * x;

        // the part of x transverse to w has unit content; align it second
        Matrix x_low(R, a - 1, 1);
        for (int i = 1; i < a; ++i) x_low.set(i - 1, 0, x.at(i, 0));
        SmithResult sx = smith_normal_form(x_low);
        if (sx.divisors.empty() || !R.is_unit(sx.divisors[0]))
            throw std::logic_error("exposure: residual vector is not unimodular");
        Matrix G2 = Matrix::identity(R, a);
        Matrix G2inv = Matrix::identity(R, a);
        for (int i = 0; i < a - 1; ++i)
            for (int j = 0; j < a - 1; ++j) {
                G2.set(i + 1, j + 1, sx.U.at(i, j));
                G2inv.set(i + 1, j + 1, sx.U_inv.at(i, j));
            }
        Matrix scale2 = Matrix::identity(R, a);
        Matrix scale2inv = Matrix::identity(R, a);
        scale2.set(1, 1, R.inverse_of_unit(sx.divisors[0]));
        scale2inv.set(1, 1, sx.divisors[0]);
        G2 = scale2 * G2;
        G2inv = G2inv * scale2inv;
        conjugate(embed_on(R, rank[0], coords, G2), embed_on(R, rank[0], coords, G2inv), acc,
                  acc_inv);
        // now D maps the second alive coordinate to the first one exactly
    }

    void eliminate_period_one() {
        for (;;) {
            Matrix A = alive_submatrix(0);
            if (A.rows() <= 1) break;
            if (!has_unit(R, elementary_divisors(A))) break;
            Matrix acc = Matrix::identity(R, rank[0]);
            Matrix acc_inv = Matrix::identity(R, rank[0]);

            auto find_offdiag = [&]() -> std::optional<std::pair<int, int>> {
                for (int i : alive_list(0))
                    for (int j : alive_list(0))
                        if (i != j && R.is_unit(D[0].at(i, j))) return std::make_pair(i, j);
                return std::nullopt;
            };
            auto piv = find_offdiag();
            if (!piv) {
                expose_offdiag_unit(&acc, &acc_inv);
                piv = find_offdiag();
                if (!piv) throw std::logic_error("exposure failed to produce a pivot");
            }
            auto [r, c] = *piv;
            RingElem uinv = R.inverse_of_unit(D[0].at(r, c));

            // clear column c, then row r, by paired conjugations
            for (int k : alive_list(0)) {
                if (k == r) continue;
                RingElem v = D[0].at(k, c);
                if (R.is_zero(v)) continue;
                RingElem lam = R.mul(v, uinv);
                Matrix E = Matrix::identity(R, rank[0]);
                Matrix Einv = Matrix::identity(R, rank[0]);
                E.set(k, r, R.neg(lam));
                Einv.set(k, r, lam);
                conjugate(E, Einv, &acc, &acc_inv);
            }
            for (int l : alive_list(0)) {
                if (l == c) continue;
                RingElem v = D[0].at(r, l);
                if (R.is_zero(v)) continue;
                RingElem mu = R.mul(v, uinv);
                Matrix F = Matrix::identity(R, rank[0]);
                Matrix Finv = Matrix::identity(R, rank[0]);
                F.set(c, l, mu);
                Finv.set(c, l, R.neg(mu));
                conjugate(F, Finv, &acc, &acc_inv);
            }
            split_pivot(0, r, c);
            record_move(0, acc, acc_inv, acc, acc_inv, {{r, c}});
        }
    }

    void run() {
        if (q == 0) return;
        if (periodic && q == 1) {
            eliminate_period_one();
            return;
        }
        bool progressed = true;
        while (progressed) {
            progressed = false;
            int start = periodic ? 0 : 1;
            for (int idx = start; idx < q; ++idx)
                if (eliminate_at(idx) > 0) progressed = true;
        }
    }
};

Engine make_engine(const RingSpec& R, const ChainComplex& c, std::string tag) {
    Engine e;
    e.R = R;
    e.periodic = c.is_periodic();
    e.component_tag = std::move(tag);
    std::vector<int> degs = c.degrees();
    e.q = static_cast<int>(degs.size());
    e.base_degree = degs.empty() ? 0 : degs.front();
    for (int d : degs) {
        int n = c.module_at(d).generators();
        e.rank.push_back(n);
        e.T.push_back(Matrix::identity(R, n));
        e.Tinv.push_back(Matrix::identity(R, n));
        e.alive.emplace_back(n, true);
    }
    if (e.periodic) {
        for (int r = 0; r < e.q; ++r) e.D.push_back(c.differential_at(r));
    } else {
        e.D.push_back(Matrix(R, 0, 0));
        for (int k = 1; k < e.q; ++k) e.D.push_back(c.differential_at(e.base_degree + k));
    }
    return e;
}

// ---------------------------------------------------------------------------
// component runs and trace assembly
// ---------------------------------------------------------------------------

struct ComponentRun {
    RingSpec ring;        // engine ring
    RingElem modulus;     // relation coefficient for reassembled generators; zero = free
    RingElem idempotent;  // weight used when mapping component values back
    Engine engine;
    // per degree index: the normalized-generator position behind each
    // component generator (identity for the direct path)
    std::vector<std::vector<int>> gen_map;
};

struct SplitLayout {
    std::vector<std::vector<int>> split_rows;  // per index, sources then targets
    std::vector<std::vector<int>> alive_rows;
    // per index: ((target position, source position), unit) of each disk
    std::vector<std::vector<std::pair<std::pair<int, int>, RingElem>>> disk_entries;
};

SplitLayout layout_of(const Engine& e) {
    SplitLayout L;
    L.split_rows.resize(e.q);
    L.alive_rows.resize(e.q);
    L.disk_entries.resize(e.q);
    std::vector<std::vector<int>> sources(e.q), targets(e.q);
    for (const auto& p : e.pivots) {
        sources[p.idx].push_back(p.col);
        targets[e.wrap(p.idx - 1)].push_back(p.row);
    }
    for (int j = 0; j < e.q; ++j) {
        L.split_rows[j] = sources[j];
        for (int r : targets[j]) L.split_rows[j].push_back(r);
        for (int i = 0; i < e.rank[j]; ++i)
            if (e.alive[j][i]) L.alive_rows[j].push_back(i);
    }
    std::vector<int> source_count(e.q, 0);
    for (const auto& p : e.pivots) {
        int tgt = e.wrap(p.idx - 1);
        int src_pos = source_count[p.idx]++;
        int t_pos = static_cast<int>(sources[tgt].size());
        for (size_t k = 0; k < targets[tgt].size(); ++k)
            if (targets[tgt][k] == p.row) {
                t_pos += static_cast<int>(k);
                break;
            }
        L.disk_entries[p.idx].push_back({{t_pos, src_pos}, p.unit});
    }
    return L;
}

FPModule component_module(const RingSpec& big, const RingElem& modulus, int count) {
    if (big.is_zero(modulus)) return FPModule::free(big, count);
    return FPModule(big, count, Matrix::identity(big, count).scaled(modulus));
}

ReductionTrace assemble(const ChainComplex& original, std::vector<ComponentRun>& runs) {
    const RingSpec& R = original.ring();
    std::vector<int> degs = original.degrees();
    const int q = static_cast<int>(degs.size());

    std::vector<SplitLayout> layouts;
    for (auto& run : runs) layouts.push_back(layout_of(run.engine));

    auto module_for = [&](int j, bool split_side) {
        std::vector<FPModule> parts;
        for (size_t ci = 0; ci < runs.size(); ++ci) {
            int count = split_side ? static_cast<int>(layouts[ci].split_rows[j].size())
                                   : static_cast<int>(layouts[ci].alive_rows[j].size());
            parts.push_back(component_module(R, runs[ci].modulus, count));
        }
        return direct_sum_many(R, parts);
    };
    auto diff_for = [&](int j, bool split_side) {
        int jt = original.is_periodic() ? floor_mod(j - 1, q) : j - 1;
        ModuleMultiSum here = module_for(j, split_side);
        ModuleMultiSum below = module_for(jt, split_side);
        Matrix d(R, below.sum.generators(), here.sum.generators());
        for (size_t ci = 0; ci < runs.size(); ++ci) {
            const Engine& e = runs[ci].engine;
            int rows = split_side ? static_cast<int>(layouts[ci].split_rows[jt].size())
                                  : static_cast<int>(layouts[ci].alive_rows[jt].size());
            int cols = split_side ? static_cast<int>(layouts[ci].split_rows[j].size())
                                  : static_cast<int>(layouts[ci].alive_rows[j].size());
            Matrix block(runs[ci].ring, rows, cols);
            if (split_side) {
                for (const auto& [pos, u] : layouts[ci].disk_entries[j])
                    block.set(pos.first, pos.second, u);
            } else if (e.has_diff(j)) {
                const Matrix& full = e.D[e.wrap(j)];
                const auto& rsel = layouts[ci].alive_rows[jt];
                const auto& csel = layouts[ci].alive_rows[j];
                for (size_t a = 0; a < rsel.size(); ++a)
                    for (size_t b = 0; b < csel.size(); ++b)
                        block.set(static_cast<int>(a), static_cast<int>(b),
                                  full.at(rsel[a], csel[b]));
            }
            d = d + below.incls[ci] * lift_matrix(R, block) * here.projs[ci];
        }
        return d;
    };

    std::vector<FPModule> split_mods, reduced_mods;
    std::vector<Matrix> split_diffs, reduced_diffs;
    for (int j = 0; j < q; ++j) {
        split_mods.push_back(module_for(j, true).sum);
        reduced_mods.push_back(module_for(j, false).sum);
    }
    int dstart = original.is_periodic() ? 0 : 1;
    for (int j = dstart; j < q; ++j) {
        split_diffs.push_back(diff_for(j, true));
        reduced_diffs.push_back(diff_for(j, false));
    }

    auto build = [&](std::vector<FPModule> mods, std::vector<Matrix> diffs) {
        if (original.is_periodic())
            return ChainComplex::periodic(R, std::move(mods), std::move(diffs));
        if (q == 0) return ChainComplex::zero_bounded(R);
        return ChainComplex::bounded(R, degs.front(), std::move(mods), std::move(diffs));
    };
    ReductionTrace trace{{}, build(split_mods, split_diffs),
                         build(reduced_mods, reduced_diffs), {}, {}};
    for (auto& run : runs)
        for (auto& m : run.engine.moves) trace.moves.push_back(m);

    for (int j = 0; j < q; ++j) {
        int g = original.module_at(degs[j]).generators();
        int total = split_mods[j].generators() + reduced_mods[j].generators();
        Matrix to(R, total, g);
        Matrix from(R, g, total);
        int row = 0;
        auto emit = [&](bool split_side) {
            for (size_t ci = 0; ci < runs.size(); ++ci) {
                const Engine& e = runs[ci].engine;
                const auto& gens = runs[ci].gen_map[j];
                const auto& idxs =
                    split_side ? layouts[ci].split_rows[j] : layouts[ci].alive_rows[j];
                Matrix tl = lift_matrix(R, e.T[j]);
                Matrix til = lift_matrix(R, e.Tinv[j]);
                for (int r : idxs) {
                    for (int cc = 0; cc < e.rank[j]; ++cc) {
                        to.set(row, gens[cc], tl.at(r, cc));
                        from.set(gens[cc], row, R.mul(runs[ci].idempotent, til.at(cc, r)));
                    }
                    ++row;
                }
            }
        };
        emit(true);
        emit(false);
        trace.iso_to_sum.emplace(degs[j], std::move(to));
        trace.iso_from_sum.emplace(degs[j], std::move(from));
    }
    return trace;
}

struct NormalizedComplex {
    ChainComplex complex;  // diagonal presentations, units dropped
    std::vector<Matrix> to_norm, from_norm;  // per degree index
};

NormalizedComplex normalize_for_reduction(const ChainComplex& c) {
    const RingSpec& R = c.ring();
    std::vector<int> degs = c.degrees();
    std::vector<FPModule> mods;
    std::vector<Matrix> to, from;
    for (int d : degs) {
        const FPModule& m = c.module_at(d);
        if (m.relations().cols() == 0 || m.relations().is_zero()) {
            mods.push_back(FPModule::free(R, m.generators()));
            to.push_back(Matrix::identity(R, m.generators()));
            from.push_back(Matrix::identity(R, m.generators()));
            continue;
        }
        const auto& cf = m.canonical_form();
        std::vector<int> keep;
        std::vector<RingElem> moduli;
        for (int i = 0; i < m.generators(); ++i) {
            RingElem dd = i < static_cast<int>(cf.full_diagonal.size()) ? cf.full_diagonal[i]
                                                                        : R.zero();
            if (R.is_unit(dd)) continue;
            keep.push_back(i);
            moduli.push_back(dd);
        }
        std::vector<int> relpos;
        for (size_t i = 0; i < moduli.size(); ++i)
            if (!R.is_zero(moduli[i])) relpos.push_back(static_cast<int>(i));
        Matrix rel(R, static_cast<int>(keep.size()), static_cast<int>(relpos.size()));
        for (size_t j = 0; j < relpos.size(); ++j)
            rel.set(relpos[j], static_cast<int>(j), moduli[relpos[j]]);
        mods.push_back(FPModule(R, static_cast<int>(keep.size()), rel));
        to.push_back(cf.to_diagonal.select_rows(keep));
        from.push_back(cf.from_diagonal.select_cols(keep));
    }
    std::vector<Matrix> diffs;
    if (c.is_periodic()) {
        const int q = c.period();
        for (int r = 0; r < q; ++r)
            diffs.push_back(to[floor_mod(r - 1, q)] * c.differential_at(r) * from[r]);
    } else {
        for (size_t k = 1; k < degs.size(); ++k)
            diffs.push_back(to[k - 1] * c.differential_at(degs[k]) * from[k]);
    }
    ChainComplex normalized =
        c.is_periodic() ? ChainComplex::periodic(R, mods, diffs)
                        : (degs.empty() ? ChainComplex::zero_bounded(R)
                                        : ChainComplex::bounded(R, degs.front(), mods, diffs));
    require_valid(normalized);
    return {std::move(normalized), std::move(to), std::move(from)};
}

std::vector<ComponentRun> run_components(const ChainComplex& c) {
    // c carries diagonal presentations with no unit moduli
    const RingSpec& R = c.ring();
    std::vector<int> degs = c.degrees();
    std::vector<std::vector<RingElem>> moduli;
    bool any_torsion = false;
    for (int d : degs) {
        auto m = diagonal_moduli(c.module_at(d));
        if (!m) throw std::logic_error("normalization did not reach a diagonal presentation");
        for (const RingElem& x : *m)
            if (!R.is_zero(x)) any_torsion = true;
        moduli.push_back(*m);
    }
    if (any_torsion && R.is_domain())
        throw std::invalid_argument("reduce: non-free module encountered");
    bool multi = R.kind() == RingKind::residues && R.modulus_factorization().size() > 1;
    if (any_torsion && !multi)
        throw std::invalid_argument("reduce: module is not projective");

    std::vector<ComponentRun> runs;
    if (multi) {
        for (const auto& [p, e] : R.modulus_factorization()) {
            Int m = 1;
            for (int i = 0; i < e; ++i) m *= p;
            RingSpec comp = RingSpec::residues(m);
            // a generator survives in this component when its modulus has the
            // full p-power (or it is free); partial powers are not projective
            std::vector<std::vector<int>> gen_map(degs.size());
            for (size_t di = 0; di < degs.size(); ++di)
                for (size_t gi = 0; gi < moduli[di].size(); ++gi) {
                    const RingElem& mod = moduli[di][gi];
                    if (R.is_zero(mod)) {
                        gen_map[di].push_back(static_cast<int>(gi));
                        continue;
                    }
                    int v = valuation(mod.num, p);
                    if (v != 0 && v != e)
                        throw std::invalid_argument("reduce: module is not projective");
                    if (v == e) gen_map[di].push_back(static_cast<int>(gi));
                }
            auto restrict = [&](const Matrix& big, const std::vector<int>& rows,
                                const std::vector<int>& cols) {
                Matrix out(comp, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
                for (size_t i = 0; i < rows.size(); ++i)
                    for (size_t j = 0; j < cols.size(); ++j)
                        out.set(static_cast<int>(i), static_cast<int>(j),
                                comp.from_int(big.at(rows[i], cols[j]).num));
                return out;
            };
            std::vector<FPModule> mods;
            std::vector<Matrix> diffs;
            for (size_t di = 0; di < degs.size(); ++di)
                mods.push_back(FPModule::free(comp, static_cast<int>(gen_map[di].size())));
            if (c.is_periodic()) {
                const int q = c.period();
                for (int r = 0; r < q; ++r)
                    diffs.push_back(
                        restrict(c.differential_at(r), gen_map[floor_mod(r - 1, q)], gen_map[r]));
            } else {
                for (size_t k = 1; k < degs.size(); ++k)
                    diffs.push_back(
                        restrict(c.differential_at(degs[k]), gen_map[k - 1], gen_map[k]));
            }
            ChainComplex cc = c.is_periodic()
                                  ? ChainComplex::periodic(comp, mods, diffs)
                                  : (degs.empty() ? ChainComplex::zero_bounded(comp)
                                                  : ChainComplex::bounded(comp, degs.front(),
                                                                          mods, diffs));
            ComponentRun run{comp, R.from_int(m), R.zero(), make_engine(comp, cc, comp.name()),
                             std::move(gen_map)};
            Int other = R.modulus() / m;
            for (Int k = 0; k < m; ++k)
                if ((k * other) % m == 1 % m) {
                    run.idempotent = R.from_int(k * other);
                    break;
                }
            run.engine.run();
            runs.push_back(std::move(run));
        }
        return runs;
    }
    ComponentRun run{R, R.zero(), R.one(), make_engine(R, c, ""), {}};
    for (size_t di = 0; di < degs.size(); ++di) {
        std::vector<int> ident;
        for (int i = 0; i < c.module_at(degs[di]).generators(); ++i) ident.push_back(i);
        run.gen_map.push_back(std::move(ident));
    }
    run.engine.run();
    runs.push_back(std::move(run));
    return runs;
}

}  // namespace

ReductionTrace reduce_complex(const ChainComplex& input) {
    require_valid(input);
    NormalizedComplex norm = normalize_for_reduction(input);
    auto runs = run_components(norm.complex);
    ReductionTrace trace = assemble(norm.complex, runs);
    // fold the presentation normalization into the isomorphism data
    std::vector<int> degs = input.degrees();
    for (size_t k = 0; k < degs.size(); ++k) {
        trace.iso_to_sum.at(degs[k]) = trace.iso_to_sum.at(degs[k]) * norm.to_norm[k];
        trace.iso_from_sum.at(degs[k]) = norm.from_norm[k] * trace.iso_from_sum.at(degs[k]);
    }
    return trace;
}

bool verify_reduction(const ChainComplex& original, const ReductionTrace& t, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    ChainComplex sum = direct_sum_complexes(t.split_part, t.reduced);
    std::vector<int> degs = original.degrees();
    for (int d : degs) {
        auto to = t.iso_to_sum.find(d);
        auto from = t.iso_from_sum.find(d);
        if (to == t.iso_to_sum.end() || from == t.iso_from_sum.end())
            return fail("missing isomorphism data");
        const FPModule& src = original.module_at(d);
        const FPModule& dst = sum.module_at(d);
        try {
            ModuleHom f(src, dst, to->second);
            ModuleHom g(dst, src, from->second);
            if (!f.compose(g).equals(ModuleHom::identity(dst)) ||
                !g.compose(f).equals(ModuleHom::identity(src)))
                return fail("isomorphism data does not invert");
        } catch (const std::exception& e) {
            return fail(std::string("isomorphism data ill-formed: ") + e.what());
        }
    }
    for (int d : degs) {
        int below = original.is_periodic() ? floor_mod(d - 1, original.period()) : d - 1;
        auto to_b = t.iso_to_sum.find(below);
        if (to_b == t.iso_to_sum.end()) {
            if (original.is_periodic()) return fail("missing isomorphism row");
            continue;  // window boundary: both differentials land in zero
        }
        Matrix lhs = to_b->second * original.differential_at(d);
        Matrix rhs = sum.differential_at(d) * t.iso_to_sum.at(d);
        if (!in_column_span(sum.module_at(below).relations(), lhs - rhs))
            return fail("isomorphism does not commute with the differentials");
    }
    if (!is_contractible(t.split_part)) return fail("split part is not contractible");
    for (int d : degs)
        if (!homology_at(original, d)
                 .canonical_form()
                 .same_class(homology_at(t.reduced, d).canonical_form()))
            return fail("homology changed");
    if (is_split_minimal(t.reduced) != TriBool::yes)
        return fail("reduced part keeps a unit elementary divisor");
    return true;
}

// ---------------------------------------------------------------------------
// minimality predicates
// ---------------------------------------------------------------------------

namespace {

bool free_complex(const ChainComplex& c) {
    for (int d : c.degrees())
        if (c.module_at(d).relations().cols() > 0 && !c.module_at(d).relations().is_zero())
            return false;
    return true;
}

struct ComponentView {
    RingSpec ring;
    Int prime_power;  // modulus of the component (zero for the untouched ring)
};

std::vector<ComponentView> component_rings(const RingSpec& R) {
    std::vector<ComponentView> out;
    if (R.kind() == RingKind::residues && R.modulus_factorization().size() > 1) {
        for (const auto& [p, e] : R.modulus_factorization()) {
            Int m = 1;
            for (int i = 0; i < e; ++i) m *= p;
            out.push_back({RingSpec::residues(m), m});
        }
    } else {
        out.push_back({R, Int(0)});
    }
    return out;
}

/// Exact split-minimality test for complexes whose modules carry diagonal
/// presentations with component-complete moduli; covers free complexes.
std::optional<bool> diagonal_split_minimal(const ChainComplex& c) {
    const RingSpec& R = c.ring();
    std::vector<int> degs = c.degrees();
    std::vector<std::vector<RingElem>> moduli;
    for (int d : degs) {
        auto m = diagonal_moduli(c.module_at(d));
        if (!m) return std::nullopt;
        moduli.push_back(*m);
    }
    if (R.is_domain()) {
        for (const auto& per_degree : moduli)
            for (const RingElem& m : per_degree)
                if (!R.is_zero(m)) return std::nullopt;  // torsion over a domain
        for (int d : degs) {
            Matrix diff = c.differential_at(d);
            if ((c.is_periodic() || d > c.min_degree()) &&
                has_unit(R, elementary_divisors(diff)))
                return false;
        }
        return true;
    }
    // residue ring: check each prime component on its surviving generators
    for (const auto& [p, e] : R.modulus_factorization()) {
        Int pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        RingSpec comp = RingSpec::residues(pe);
        auto alive = [&](size_t di, int gen) {
            const RingElem& m = moduli[di][gen];
            if (R.is_zero(m)) return true;
            int v = valuation(m.num, p);
            if (v != 0 && v != e) throw std::domain_error("module is not projective");
            return v == e;
        };
        for (size_t di = 0; di < degs.size(); ++di) {
            int d = degs[di];
            if (!c.is_periodic() && d == c.min_degree()) continue;
            size_t bi = c.is_periodic() ? (di + degs.size() - 1) % degs.size() : di - 1;
            Matrix diff = c.differential_at(d);
            std::vector<int> rows, cols;
            for (int i = 0; i < diff.rows(); ++i)
                if (alive(bi, i)) rows.push_back(i);
            for (int j = 0; j < diff.cols(); ++j)
                if (alive(di, j)) cols.push_back(j);
            Matrix sub(comp, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
            for (size_t a = 0; a < rows.size(); ++a)
                for (size_t b = 0; b < cols.size(); ++b)
                    sub.set(static_cast<int>(a), static_cast<int>(b),
                            comp.from_int(diff.at(rows[a], cols[b]).num));
            if (has_unit(comp, elementary_divisors(sub))) return false;
        }
    }
    return true;
}

/// Exhaustive search for a nonzero idempotent chain endomorphism whose image
/// is a contractible subcomplex. Finite rings; exact within the budget.
TriBool idempotent_summand_search(const ChainComplex& c, const SearchBudget& budget) {
    const RingSpec& R = c.ring();
    if (!R.is_finite()) return TriBool::unknown;
    std::vector<int> degs = c.degrees();
    Int total = 1;
    for (int d : degs) {
        auto cnt = hom_count(c.module_at(d), c.module_at(d));
        if (!cnt) return TriBool::unknown;
        total *= *cnt;
        if (total > budget.max_cases) return TriBool::unknown;
    }
    std::vector<std::vector<Matrix>> endos;
    for (int d : degs) endos.push_back(enumerate_homs(c.module_at(d), c.module_at(d)));

    std::vector<size_t> pick(degs.size(), 0);
    for (;;) {
        std::map<int, Matrix> comps;
        for (size_t i = 0; i < degs.size(); ++i) comps.emplace(degs[i], endos[i][pick[i]]);
        bool refuted = false;
        try {
            ChainMap e(c, c, comps);
            if (!e.is_zero_map() && (e.compose(e) - e).is_zero_map()) {
                // restrict the complex to the image of e
                std::vector<FPModule> mods;
                std::vector<Matrix> gens;
                for (int d : degs) {
                    gens.push_back(e.component_at(d));
                    mods.push_back(subquotient_module(c.module_at(d), gens.back(),
                                                      Matrix(R, c.module_at(d).generators(), 0)));
                }
                auto gen_at = [&](int deg) -> const Matrix& {
                    for (size_t i = 0; i < degs.size(); ++i)
                        if (degs[i] == (c.is_periodic() ? floor_mod(deg, c.period()) : deg))
                            return gens[i];
                    throw std::logic_error("degree lookup");
                };
                std::vector<Matrix> diffs;
                bool ok = true;
                for (size_t i = 0; i < degs.size(); ++i) {
                    int d = degs[i];
                    if (!c.is_periodic() && d == c.min_degree()) continue;
                    int bd = c.is_periodic() ? floor_mod(d - 1, c.period()) : d - 1;
                    auto sol = solve_linear(
                        gen_at(bd).hstack(c.module_at(bd).relations()),
                        c.differential_at(d) * gen_at(d));
                    if (!sol) {
                        ok = false;
                        break;
                    }
                    diffs.push_back(sol->take_rows(0, gen_at(bd).cols()));
                }
                if (ok) {
                    ChainComplex image =
                        c.is_periodic()
                            ? ChainComplex::periodic(R, mods, diffs)
                            : ChainComplex::bounded(R, degs.front(), mods, diffs);
                    if (validate_complex(image).empty() && !image.is_zero_complex() &&
                        is_contractible(image))
                        refuted = true;
                }
            }
        } catch (const std::invalid_argument&) {
            // not a chain map; skip
        }
        if (refuted) return TriBool::no;
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == endos[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return TriBool::yes;
}

}  // namespace

TriBool is_split_minimal(const ChainComplex& c, const SearchBudget& budget) {
    require_valid(c);
    try {
        if (auto exact = diagonal_split_minimal(c))
            return *exact ? TriBool::yes : TriBool::no;
    } catch (const std::domain_error&) {
        // fall through to the search
    }
    if (c.ring().is_finite()) return idempotent_summand_search(c, budget);
    return TriBool::unknown;
}

TriBool is_pure_minimal(const ChainComplex& c, const SearchBudget& budget) {
    return is_split_minimal(c, budget);
}

namespace {

bool in_radical(const RingSpec& R, const RingElem& x) {
    switch (R.kind()) {
        case RingKind::integers:
        case RingKind::invert_primes:
            return R.is_zero(x);
        case RingKind::local_at:
            return R.is_zero(x) || x.num % R.local_prime() == 0;
        case RingKind::residues: {
            if (R.is_zero(x)) return true;
            for (const auto& [p, e] : R.modulus_factorization())
                if (x.num % p != 0) return false;
            return true;
        }
    }
    return false;
}

bool differentials_in_radical(const ChainComplex& c) {
    for (int d : c.degrees()) {
        Matrix m = c.differential_at(d);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!in_radical(c.ring(), m.at(i, j))) return false;
    }
    return true;
}

RingElem modulus_of_generator(const FPModule& m, int gen) {
    auto d = diagonal_moduli(m);
    if (!d) throw std::logic_error("expected a diagonal presentation");
    return (*d)[gen];
}

// collapse one eliminated disk of the reduction: the induced morphism
// 1 + d sigma + sigma d annihilates that summand
std::optional<Homotopy> witness_from_reduction(const ChainComplex& c) {
    ReductionTrace t = reduce_complex(c);
    if (t.split_part.is_zero_complex()) return std::nullopt;
    const RingSpec& R = c.ring();
    for (int d : t.split_part.degrees()) {
        Matrix sd = t.split_part.differential_at(d);
        for (int i = 0; i < sd.rows(); ++i)
            for (int j = 0; j < sd.cols(); ++j) {
                const RingElem& u = sd.at(i, j);
                if (R.is_zero(u)) continue;
                RingElem m = modulus_of_generator(t.split_part.module_at(d), j);
                RingElem v;
                if (R.is_zero(m)) {
                    auto inv = R.try_divide(R.one(), u);
                    if (!inv) continue;
                    v = *inv;
                } else {
                    RingSpec comp = RingSpec::residues(m.num);
                    v = R.from_int(comp.inverse_of_unit(comp.from_int(u.num)).num);
                }
                int below = t.split_part.is_periodic()
                                ? floor_mod(d - 1, t.split_part.period())
                                : d - 1;
                Matrix sigma_sum(R,
                                 t.split_part.module_at(d).generators() +
                                     t.reduced.module_at(d).generators(),
                                 t.split_part.module_at(below).generators() +
                                     t.reduced.module_at(below).generators());
                sigma_sum.set(j, i, R.neg(v));
                int dkey = t.split_part.is_periodic() ? floor_mod(d, c.period()) : d;
                Homotopy h;
                h.components.emplace(below,
                                     t.iso_from_sum.at(dkey) * sigma_sum * t.iso_to_sum.at(below));
                return h;
            }
    }
    return std::nullopt;
}

}  // namespace

MinimalityResult is_minimal(const ChainComplex& c, const SearchBudget& budget) {
    require_valid(c);
    MinimalityResult out;
    if (c.is_zero_complex()) {
        out.value = TriBool::yes;
        out.method = "zero complex";
        return out;
    }
    const RingSpec& R = c.ring();

    if (R.is_finite()) {
        Int work = 0;
        bool feasible = true;
        for (int d : c.degrees()) {
            auto up = hom_count(c.module_at(d), c.module_at(d + 1));
            auto dn = hom_count(c.module_at(d - 1), c.module_at(d));
            if (!up || !dn) {
                feasible = false;
                break;
            }
            work += *up * *dn;
            if (work > budget.max_cases) {
                feasible = false;
                break;
            }
        }
        if (feasible) {
            for (int d : c.degrees()) {
                auto ups = enumerate_homs(c.module_at(d), c.module_at(d + 1));
                auto dns = enumerate_homs(c.module_at(d - 1), c.module_at(d));
                for (const Matrix& su : ups)
                    for (const Matrix& sd : dns) {
                        Matrix phi = Matrix::identity(R, c.module_at(d).generators()) +
                                     c.differential_at(d + 1) * su + sd * c.differential_at(d);
                        if (!ModuleHom(c.module_at(d), c.module_at(d), phi).is_isomorphism()) {
                            out.value = TriBool::no;
                            Homotopy h;
                            int ukey = c.is_periodic() ? floor_mod(d, c.period()) : d;
                            int dkey = c.is_periodic() ? floor_mod(d - 1, c.period()) : d - 1;
                            h.components.emplace(ukey, su);
                            if (h.components.count(dkey))
                                h.components[dkey] = h.components[dkey] + sd;
                            else
                                h.components.emplace(dkey, sd);
                            out.witness = std::move(h);
                            out.method = "exhaustive homotopy search";
                            return out;
                        }
                    }
            }
            out.value = TriBool::yes;
            out.method = "exhaustive homotopy search";
            return out;
        }
    }

    if (free_complex(c)) {
        if (differentials_in_radical(c)) {
            out.value = TriBool::yes;
            out.method = "differential lies in the radical";
            return out;
        }
        if (R.is_finite() || R.kind() == RingKind::local_at) {
            // exact over (semi-)local coefficient rings for free complexes
            out.value = TriBool::no;
            out.witness = witness_from_reduction(c);
            out.method = "radical criterion with a reduction witness";
            return out;
        }
        // trivial-radical domains: look for a small refuting homotopy
        for (int d : c.degrees()) {
            const FPModule& here = c.module_at(d);
            const FPModule& up = c.module_at(d + 1);
            for (int i = 0; i < up.generators(); ++i)
                for (int j = 0; j < here.generators(); ++j)
                    for (long long v : {1, -1, 2, -2, 3, -3}) {
                        Matrix sigma(R, up.generators(), here.generators());
                        sigma.set(i, j, R.from_int(v));
                        Matrix phi_here = Matrix::identity(R, here.generators()) +
                                          c.differential_at(d + 1) * sigma;
                        Matrix phi_up = Matrix::identity(R, up.generators()) +
                                        sigma * c.differential_at(d + 1);
                        if (!ModuleHom(here, here, phi_here).is_isomorphism() ||
                            !ModuleHom(up, up, phi_up).is_isomorphism()) {
                            out.value = TriBool::no;
                            Homotopy h;
                            h.components.emplace(d, sigma);
                            out.witness = std::move(h);
                            out.method = "single-entry homotopy witness";
                            return out;
                        }
                    }
        }
        out.value = TriBool::unknown;
        out.method = "no refutation found within the search bound";
        return out;
    }
    out.value = TriBool::unknown;
    out.method = "no decision procedure applies to this input";
    return out;
}

DiagnosisReport diagnose(const ChainComplex& c) {
    require_valid(c);
    DiagnosisReport r;
    r.acyclic = is_acyclic(c);
    r.contractible = is_contractible(c);
    r.pure_acyclic = r.acyclic && is_pure_acyclic(c);
    r.split_minimal = is_split_minimal(c);
    r.pure_minimal = is_pure_minimal(c);
    r.notes.push_back("purity of module sequences decided as splitness "
                      "(finitely presented over a noetherian ring)");
    r.notes.push_back("pure_minimal computed as split_minimal: pure-acyclic pure "
                      "subcomplexes here are contractible split subcomplexes");
    MinimalityResult m = is_minimal(c);
    r.minimal = m.value;
    r.minimal_witness = m.witness;
    r.notes.push_back("minimal: " + m.method);
    if (r.minimal == TriBool::yes && r.split_minimal == TriBool::no)
        throw std::logic_error("minimal complex failed split-minimality");
    if (r.pure_minimal == TriBool::yes && r.split_minimal == TriBool::no)
        throw std::logic_error("pure-minimal complex failed split-minimality");
    if (r.pure_acyclic && r.pure_minimal == TriBool::yes && !c.is_zero_complex())
        throw std::logic_error("nonzero pure-acyclic pure-minimal complex");
    return r;
}

}  // namespace puremin
