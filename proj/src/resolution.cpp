#include "puremin/minimality.hpp"

#include <stdexcept>

namespace puremin {

namespace {

struct MinimalPresentation {
    int rank0;
    Matrix d1;            // rank0 x (number of nonzero divisors)
    Matrix augmentation;  // generators(M) x rank0
};

// diagonal presentation with unit divisors dropped; the augmentation sends
// the surviving diagonal coordinates back into M
MinimalPresentation minimal_presentation(const FPModule& m) {
    const RingSpec& R = m.ring();
    const auto& cf = m.canonical_form();
    std::vector<int> keep;
    std::vector<RingElem> divs;
    for (int i = 0; i < m.generators(); ++i) {
        RingElem d = i < static_cast<int>(cf.full_diagonal.size()) ? cf.full_diagonal[i]
                                                                   : R.zero();
        if (R.is_unit(d)) continue;
        keep.push_back(i);
        divs.push_back(d);
    }
    int r0 = static_cast<int>(keep.size());
    std::vector<int> relpos;
    for (int i = 0; i < r0; ++i)
        if (!R.is_zero(divs[i])) relpos.push_back(i);
    Matrix d1(R, r0, static_cast<int>(relpos.size()));
    for (size_t j = 0; j < relpos.size(); ++j) d1.set(relpos[j], static_cast<int>(j), divs[relpos[j]]);
    return {r0, d1, cf.from_diagonal.select_cols(keep)};
}

// drop redundant generators from a generating matrix: transform the relation
// presentation to diagonal form and delete the generators with unit relations
// (their columns are zero)
Matrix minimal_generators(const Matrix& K) {
    const RingSpec& R = K.ring();
    if (K.cols() == 0) return K;
    Matrix Q = kernel(K);
    SmithResult s = smith_normal_form(Q);
    Matrix Kp = K * s.U_inv;
    std::vector<int> keep;
    for (int j = 0; j < K.cols(); ++j) {
        RingElem d = j < static_cast<int>(s.divisors.size()) ? s.divisors[j] : R.zero();
        if (R.is_unit(d)) {
            for (int i = 0; i < Kp.rows(); ++i)
                if (!R.is_zero(Kp.at(i, j)))
                    throw std::logic_error("redundant kernel generator did not vanish");
            continue;
        }
        keep.push_back(j);
    }
    Matrix out = Kp.select_cols(keep);
    if (!in_column_span(out, K) && out.cols() > 0)
        throw std::logic_error("generator minimization lost the span");
    return out;
}

}  // namespace

ResolutionResult free_resolution(const FPModule& m, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("resolution cutoff must be at least 1");
    const RingSpec& R = m.ring();
    MinimalPresentation mp = minimal_presentation(m);

    std::vector<int> ranks = {mp.rank0};
    std::vector<Matrix> diffs;
    std::vector<FPModule> syzygies;
    bool complete = false;
    if (mp.d1.cols() == 0) {
        complete = true;  // already free
    } else {
        diffs.push_back(mp.d1);
        ranks.push_back(mp.d1.cols());
        while (static_cast<int>(diffs.size()) < cutoff) {
            Matrix K = minimal_generators(kernel(diffs.back()));
            if (K.cols() == 0) {
                complete = true;
                break;
            }
            syzygies.emplace_back(R, K.cols(), kernel(K));
            diffs.push_back(K);
            ranks.push_back(K.cols());
        }
        if (!complete && minimal_generators(kernel(diffs.back())).cols() == 0)
            complete = true;
    }

    std::vector<FPModule> mods;
    for (int r : ranks) mods.push_back(FPModule::free(R, r));
    ChainComplex res = ChainComplex::bounded(R, 0, std::move(mods), std::move(diffs));
    ChainMap aug(res, one_term_complex(m), {{0, mp.augmentation}});
    return ResolutionResult{std::move(res), std::move(aug), complete, std::move(syzygies)};
}

ResolutionResult free_resolution(const ChainComplex& input, int cutoff) {
    if (input.is_periodic())
        throw std::invalid_argument("resolution requires a bounded complex");
    require_valid(input);
    const RingSpec& R = input.ring();
    ChainComplex c = input.trimmed();

    if (c.is_zero_complex()) {
        ChainComplex zero = ChainComplex::zero_bounded(R);
        return ResolutionResult{zero, ChainMap::zero(zero, input), true, {}};
    }
    if (c.min_degree() == c.max_degree()) {
        int deg = c.min_degree();
        ResolutionResult base = free_resolution(c.module_at(deg), cutoff);
        ChainComplex res = base.resolution.shifted(deg);
        ChainMap to_input(res, input, {{deg, base.to_input.component_at(0)}});
        return ResolutionResult{std::move(res), std::move(to_input), base.complete,
                                std::move(base.syzygies)};
    }

    // peel the top degree off: the input is the cone of the connecting map
    // from the one-term complex at the top into the truncation below
    const int t = c.max_degree();
    std::vector<FPModule> mods;
    std::vector<Matrix> diffs;
    for (int i = c.min_degree(); i <= t - 1; ++i) mods.push_back(c.module_at(i));
    for (int i = c.min_degree() + 1; i <= t - 1; ++i) diffs.push_back(c.differential_at(i));
    ChainComplex below = ChainComplex::bounded(R, c.min_degree(), mods, diffs);
    ChainComplex top = one_term_complex(c.module_at(t), t - 1);
    ChainMap psi(top, below, {{t - 1, c.differential_at(t)}});

    ResolutionResult sub = free_resolution(below, cutoff);
    ResolutionResult modres = free_resolution(c.module_at(t), cutoff);
    ChainComplex G = modres.resolution.shifted(t - 1);
    ChainMap gamma(G, top, {{t - 1, modres.to_input.component_at(0)}});
    const ChainComplex& P = sub.resolution;

    // lift gamma through the resolution of the truncation, up to a homotopy h
    MatEqSystem sys(R);
    std::map<int, int> phi_var, h_var;
    for (int i = G.min_degree(); i <= G.max_degree(); ++i) {
        if (G.module_at(i).generators() == 0) continue;
        if (P.module_at(i).generators() > 0)
            phi_var.emplace(i, sys.add_unknown(P.module_at(i).generators(),
                                               G.module_at(i).generators()));
        if (below.module_at(i + 1).generators() > 0)
            h_var.emplace(i, sys.add_unknown(below.module_at(i + 1).generators(),
                                             G.module_at(i).generators()));
    }
    // chain condition for phi
    for (int i = G.min_degree(); i <= G.max_degree() + 1; ++i) {
        int rows = P.module_at(i - 1).generators();
        int cols = G.module_at(i).generators();
        if (rows == 0 || cols == 0) continue;
        std::vector<MatEqSystem::Term> terms;
        if (phi_var.count(i))
            terms.push_back({phi_var[i], P.differential_at(i), std::nullopt});
        if (phi_var.count(i - 1))
            terms.push_back({phi_var[i - 1], Matrix::identity(R, rows).negated(),
                             G.differential_at(i)});
        if (!terms.empty()) sys.add_equation(std::move(terms), Matrix(R, rows, cols));
    }
    // homotopy condition: pi' phi - d h - h d == psi gamma
    for (int i = G.min_degree(); i <= G.max_degree(); ++i) {
        const FPModule& tgt = below.module_at(i);
        int cols = G.module_at(i).generators();
        if (tgt.generators() == 0 || cols == 0) continue;
        std::vector<MatEqSystem::Term> terms;
        if (phi_var.count(i))
            terms.push_back({phi_var[i], sub.to_input.component_at(i), std::nullopt});
        if (h_var.count(i))
            terms.push_back({h_var[i], below.differential_at(i + 1).negated(), std::nullopt});
        if (h_var.count(i - 1))
            terms.push_back({h_var[i - 1], Matrix::identity(R, tgt.generators()).negated(),
                             G.differential_at(i)});
        if (tgt.relations().cols() > 0) {
            int slack = sys.add_unknown(tgt.relations().cols(), cols);
            terms.push_back({slack, tgt.relations(), std::nullopt});
        }
        Matrix rhs = psi.component_at(i) * gamma.component_at(i);
        if (terms.empty()) {
            if (!rhs.is_zero()) throw std::logic_error("unliftable connecting map");
            continue;
        }
        sys.add_equation(std::move(terms), std::move(rhs));
    }
    auto sol = sys.solve();
    if (!sol) throw std::logic_error("resolution lift has no solution");

    std::map<int, Matrix> phi_comps;
    for (auto [i, var] : phi_var) phi_comps.emplace(i, (*sol)[var]);
    ChainMap phi(G, P, std::move(phi_comps));
    ChainComplex cone = mapping_cone(phi);

    // quasi-isomorphism cone(phi) -> input assembled from pi', h and gamma
    std::map<int, Matrix> chi;
    for (int i : cone.degrees()) {
        if (c.module_at(i).generators() == 0) continue;
        ModuleSum layout = direct_sum_modules(P.module_at(i), G.module_at(i - 1));
        Matrix part(R, c.module_at(i).generators(), layout.sum.generators());
        if (i <= t - 1) {
            Matrix pi_part = sub.to_input.component_at(i) * layout.proj_left;
            Matrix h_part(R, c.module_at(i).generators(), layout.sum.generators());
            if (h_var.count(i - 1))
                h_part = (*sol)[h_var.at(i - 1)] * layout.proj_right;
            part = pi_part + h_part;
        } else if (i == t) {
            part = gamma.component_at(t - 1) * layout.proj_right;
        }
        chi.emplace(i, std::move(part));
    }
    ChainMap to_input(cone, input, std::move(chi));

    std::vector<FPModule> syz = std::move(sub.syzygies);
    for (auto& s : modres.syzygies) syz.push_back(std::move(s));
    return ResolutionResult{std::move(cone), std::move(to_input),
                            sub.complete && modres.complete, std::move(syz)};
}

namespace {

DimensionResult analyze_dimension(const ResolutionResult& r, DimensionKind kind,
                                  const ChainComplex* reduced_tail_from, int tail_low) {
    DimensionResult out;
    if (kind == DimensionKind::flat)
        out.notes.push_back("flat dimension equals projective dimension here: finitely "
                            "generated flat modules over these rings are projective");
    if (r.complete) {
        ReductionTrace t = reduce_complex(r.resolution);
        ChainComplex red = t.reduced.trimmed();
        out.status = DimensionResult::Status::finite;
        out.value = red.is_zero_complex() ? 0 : red.max_degree();
        out.notes.push_back("value is the top nonzero degree of the reduced resolution");
        return out;
    }
    for (size_t i = 0; i < r.syzygies.size(); ++i)
        for (size_t j = i + 1; j < r.syzygies.size(); ++j)
            if (!r.syzygies[i].is_zero_module() &&
                r.syzygies[i].is_isomorphic_to(r.syzygies[j])) {
                out.status = DimensionResult::Status::infinite;
                out.notes.push_back(
                    "a nonzero minimal syzygy class repeats: the minimal resolution is "
                    "eventually periodic");
                return out;
            }
    if (reduced_tail_from) {
        std::vector<FPModule> tail;
        for (int i = tail_low; i <= reduced_tail_from->max_degree(); ++i)
            tail.push_back(subquotient_at(*reduced_tail_from, SubquotientKind::cycles, i).module);
        for (size_t i = 0; i < tail.size(); ++i)
            for (size_t j = i + 1; j < tail.size(); ++j)
                if (!tail[i].is_zero_module() && tail[i].is_isomorphic_to(tail[j])) {
                    out.status = DimensionResult::Status::infinite;
                    out.notes.push_back("a nonzero syzygy class repeats along the reduced tail");
                    return out;
                }
    }
    out.status = DimensionResult::Status::exceeds_cutoff;
    return out;
}

}  // namespace

DimensionResult dimension(const FPModule& m, DimensionKind kind, int cutoff) {
    if (m.is_zero_module()) {
        DimensionResult out;
        out.status = DimensionResult::Status::zero_object;
        return out;
    }
    ResolutionResult r = free_resolution(m, cutoff);
    return analyze_dimension(r, kind, nullptr, 0);
}

DimensionResult dimension(const ChainComplex& c, DimensionKind kind, int cutoff) {
    require_valid(c);
    if (c.is_periodic())
        throw std::invalid_argument("dimension requires a bounded complex");
    if (is_acyclic(c)) {
        DimensionResult out;
        out.status = DimensionResult::Status::zero_object;
        out.notes.push_back("acyclic complex: isomorphic to zero in the derived category");
        return out;
    }
    ResolutionResult r = free_resolution(c, cutoff);
    ReductionTrace t = reduce_complex(r.resolution);
    ChainComplex red = t.reduced.trimmed();
    if (r.complete) {
        DimensionResult out;
        if (kind == DimensionKind::flat)
            out.notes.push_back("flat dimension equals projective dimension here: finitely "
                                "generated flat modules over these rings are projective");
        out.status = DimensionResult::Status::finite;
        out.value = red.is_zero_complex() ? 0 : red.max_degree();
        out.notes.push_back("value is the top nonzero degree of the reduced resolution");
        return out;
    }
    return analyze_dimension(r, kind, &red, c.max_degree());
}

namespace {

ReplacementResult make_replacement(ResolutionResult r) {
    ReductionTrace t = reduce_complex(r.resolution);
    const RingSpec& R = r.resolution.ring();
    std::map<int, Matrix> comps;
    for (int d : r.resolution.degrees()) {
        int split = t.split_part.module_at(d).generators();
        int red = t.reduced.module_at(d).generators();
        Matrix proj(R, red, split + red);
        for (int i = 0; i < red; ++i) proj.set(i, split + i, R.one());
        comps.emplace(d, proj * t.iso_to_sum.at(d));
    }
    ChainMap to_repl(r.resolution, t.reduced, std::move(comps));
    return ReplacementResult{t.reduced, r.resolution, std::move(r.to_input),
                             std::move(to_repl)};
}

}  // namespace

ReplacementResult pure_minimal_replacement(const FPModule& m, int cutoff) {
    return make_replacement(free_resolution(m, cutoff));
}

ReplacementResult pure_minimal_replacement(const ChainComplex& c, int cutoff) {
    return make_replacement(free_resolution(c, cutoff));
}

}  // namespace puremin
