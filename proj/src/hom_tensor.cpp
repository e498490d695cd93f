#include "puremin/complex.hpp"

#include <stdexcept>

namespace puremin {

namespace {

void require_bounded(const ChainComplex& c, const char* who) {
    if (c.is_periodic())
        throw std::invalid_argument(std::string(who) + ": periodic shapes are not supported");
}

struct Layer {
    ModuleMultiSum sum;
    std::vector<int> block_index;  // the i-coordinate carried by each block
};

}  // namespace

ChainComplex total_tensor_complex(const ChainComplex& l, const ChainComplex& m) {
    require_bounded(l, "total tensor");
    require_bounded(m, "total tensor");
    if (l.ring() != m.ring()) throw std::invalid_argument("total tensor: ring mismatch");
    const RingSpec& R = l.ring();
    if (l.is_zero_complex() || m.is_zero_complex()) return ChainComplex::zero_bounded(R);

    const int lo = l.min_degree() + m.min_degree();
    const int hi = l.max_degree() + m.max_degree();

    auto layer_at = [&](int k) {
        Layer layer;
        std::vector<FPModule> parts;
        for (int i = l.min_degree(); i <= l.max_degree(); ++i) {
            int j = k - i;
            if (j < m.min_degree() || j > m.max_degree()) continue;
            parts.push_back(tensor_modules(l.module_at(i), m.module_at(j)));
            layer.block_index.push_back(i);
        }
        layer.sum = direct_sum_many(R, parts);
        return layer;
    };

    std::vector<FPModule> mods;
    std::vector<Matrix> diffs;
    Layer below = layer_at(lo);
    mods.push_back(below.sum.sum);
    for (int k = lo + 1; k <= hi; ++k) {
        Layer here = layer_at(k);
        Matrix d(R, below.sum.sum.generators(), here.sum.sum.generators());
        for (size_t s = 0; s < here.block_index.size(); ++s) {
            int i = here.block_index[s];
            int j = k - i;
            // d(x (x) y) = dx (x) y + (-1)^i x (x) dy
            for (size_t t = 0; t < below.block_index.size(); ++t) {
                if (below.block_index[t] == i - 1) {
                    Matrix part = Matrix::kron(l.differential_at(i),
                                               Matrix::identity(R, m.module_at(j).generators()));
                    d = d + below.sum.incls[t] * part * here.sum.projs[s];
                }
                if (below.block_index[t] == i) {
                    Matrix part = Matrix::kron(Matrix::identity(R, l.module_at(i).generators()),
                                               m.differential_at(j));
                    if (i % 2 != 0) part = part.negated();
                    d = d + below.sum.incls[t] * part * here.sum.projs[s];
                }
            }
        }
        diffs.push_back(d);
        mods.push_back(here.sum.sum);
        below = std::move(here);
    }
    return ChainComplex::bounded(R, lo, std::move(mods), std::move(diffs)).trimmed();
}

ChainComplex total_hom_complex(const ChainComplex& m, const ChainComplex& n) {
    require_bounded(m, "total hom");
    require_bounded(n, "total hom");
    if (m.ring() != n.ring()) throw std::invalid_argument("total hom: ring mismatch");
    const RingSpec& R = m.ring();
    if (m.is_zero_complex() || n.is_zero_complex()) return ChainComplex::zero_bounded(R);

    const int lo = n.min_degree() - m.max_degree();
    const int hi = n.max_degree() - m.min_degree();

    struct HomLayer {
        ModuleMultiSum sum;
        std::vector<int> block_index;
        std::vector<HomModule> homs;
    };
    auto layer_at = [&](int k) {
        HomLayer layer;
        std::vector<FPModule> parts;
        for (int i = m.min_degree(); i <= m.max_degree(); ++i) {
            int j = i + k;
            if (j < n.min_degree() || j > n.max_degree()) continue;
            layer.homs.push_back(hom_modules(m.module_at(i), n.module_at(j)));
            parts.push_back(layer.homs.back().module);
            layer.block_index.push_back(i);
        }
        layer.sum = direct_sum_many(R, parts);
        return layer;
    };

    std::vector<FPModule> mods;
    std::vector<Matrix> diffs;
    HomLayer below = layer_at(lo);
    mods.push_back(below.sum.sum);
    for (int k = lo + 1; k <= hi; ++k) {
        HomLayer here = layer_at(k);
        Matrix d(R, below.sum.sum.generators(), here.sum.sum.generators());
        // d(phi) = dN o phi - (-1)^k phi o dM
        for (size_t s = 0; s < here.block_index.size(); ++s) {
            int i = here.block_index[s];
            const HomModule& src = here.homs[s];
            for (size_t t = 0; t < below.block_index.size(); ++t) {
                const HomModule& tgt = below.homs[t];
                if (below.block_index[t] == i) {
                    // post-compose with the differential of N at degree i + k
                    Matrix part(R, tgt.module.generators(), src.module.generators());
                    for (int g = 0; g < src.module.generators(); ++g) {
                        Matrix composed = n.differential_at(i + k) * src.generator_actions[g];
                        Matrix coords = hom_coordinates(tgt, composed);
                        for (int row = 0; row < part.rows(); ++row)
                            part.set(row, g, coords.at(row, 0));
                    }
                    d = d + below.sum.incls[t] * part * here.sum.projs[s];
                }
                if (below.block_index[t] == i + 1) {
                    // pre-compose with the differential of M at degree i + 1
                    Matrix part(R, tgt.module.generators(), src.module.generators());
                    for (int g = 0; g < src.module.generators(); ++g) {
                        Matrix composed = src.generator_actions[g] * m.differential_at(i + 1);
                        Matrix coords = hom_coordinates(tgt, composed);
                        for (int row = 0; row < part.rows(); ++row)
                            part.set(row, g, coords.at(row, 0));
                    }
                    if (k % 2 == 0) part = part.negated();
                    d = d + below.sum.incls[t] * part * here.sum.projs[s];
                }
            }
        }
        diffs.push_back(d);
        mods.push_back(here.sum.sum);
        below = std::move(here);
    }
    return ChainComplex::bounded(R, lo, std::move(mods), std::move(diffs)).trimmed();
}

ChainComplex character_dual_complex(const ChainComplex& c) {
    require_bounded(c, "character dual");
    const RingSpec& R = c.ring();
    if (c.is_zero_complex()) return ChainComplex::zero_bounded(R);

    // shared dualizing object: R itself over residue rings, R/(e) for a common
    // exponent e over the domains
    RingElem dualizer = R.zero();
    if (!R.is_finite()) {
        RingElem e = R.one();
        for (int i : c.degrees()) {
            const auto& cf = c.module_at(i).canonical_form();
            if (cf.free_rank != 0)
                throw std::domain_error("character dual needs finite modules");
            if (!cf.divisors.empty()) {
                const RingElem& d = cf.divisors.back();
                RingElem g = R.gcd(e, d);
                e = *R.try_divide(R.mul(e, d), g);  // lcm
            }
        }
        dualizer = R.canonical_associate(e);
    }

    std::vector<DualModule> duals;
    for (int i = c.min_degree(); i <= c.max_degree(); ++i)
        duals.push_back(character_dual(c.module_at(i), dualizer));

    auto dual_of = [&](int degree) -> const DualModule& {
        return duals[degree - c.min_degree()];
    };

    const int lo = -c.max_degree();
    const int hi = -c.min_degree();
    std::vector<FPModule> mods;
    std::vector<Matrix> diffs;
    for (int i = lo; i <= hi; ++i) mods.push_back(dual_of(-i).dual);
    for (int i = lo + 1; i <= hi; ++i) {
        // D_i -> D_{i-1} is the dual of d : M_{-i+1} -> M_{-i}
        const FPModule& src = c.module_at(-i + 1);
        const FPModule& tgt = c.module_at(-i);
        ModuleHom d(src, tgt, c.differential_at(-i + 1));
        diffs.push_back(dual_hom(d, dual_of(-i), dual_of(-i + 1)).action());
    }
    return ChainComplex::bounded(R, lo, std::move(mods), std::move(diffs)).trimmed();
}

}  // namespace puremin
