#include "puremin/module.hpp"

#include <algorithm>
#include <stdexcept>

namespace puremin {

FPModule::FPModule(RingSpec ring, int generators, Matrix relations)
    : ring_(std::move(ring)), generators_(generators), relations_(std::move(relations)) {
    if (generators < 0) throw std::invalid_argument("negative generator count");
    if (relations_.rows() != generators)
        throw std::invalid_argument("relations must have one row per generator");
    if (relations_.ring() != ring_) throw std::invalid_argument("relation ring mismatch");
}

FPModule FPModule::free(const RingSpec& ring, int rank) {
    return FPModule(ring, rank, Matrix(ring, rank, 0));
}

FPModule FPModule::cyclic(const RingSpec& ring, const RingElem& d) {
    Matrix rel(ring, 1, 1);
    rel.set(0, 0, d);
    return FPModule(ring, 1, rel);
}

const FPModule::CanonicalForm& FPModule::canonical_form() const {
    if (!canonical_) {
        SmithResult s = smith_normal_form(relations_);
        auto cf = std::make_shared<CanonicalForm>(CanonicalForm{
            {}, 0, s.U, s.U_inv, s.divisors});
        int nonzero = 0;
        for (const RingElem& d : s.divisors) {
            if (ring_.is_zero(d)) continue;
            ++nonzero;
            if (!ring_.is_unit(d)) cf->divisors.push_back(d);
        }
        cf->free_rank = generators_ - nonzero;
        canonical_ = std::move(cf);
    }
    return *canonical_;
}

bool FPModule::is_zero_module() const {
    const CanonicalForm& cf = canonical_form();
    return cf.divisors.empty() && cf.free_rank == 0;
}

bool FPModule::is_isomorphic_to(const FPModule& o) const {
    return ring_ == o.ring_ && canonical_form().same_class(o.canonical_form());
}

FPModule::Flags FPModule::classify() const {
    const CanonicalForm& cf = canonical_form();
    Flags f{};
    f.is_free = cf.divisors.empty();
    if (ring_.is_domain()) {
        // finitely generated over a PID: flat <=> projective <=> free
        f.is_projective = f.is_flat = f.is_free;
        f.is_injective_over_self = is_zero_module();
        return f;
    }
    // residue ring: decide through the prime-power decomposition of n
    bool componentwise_free = true;
    for (const auto& [p, e] : ring_.modulus_factorization())
        for (const RingElem& d : cf.divisors) {
            int v = valuation(d.num, p);
            if (v != 0 && v != e) componentwise_free = false;
        }
    f.is_projective = f.is_flat = componentwise_free;
    // Z/n is quasi-Frobenius: injective coincides with projective
    f.is_injective_over_self = componentwise_free;
    return f;
}

std::optional<Int> FPModule::element_count() const {
    const CanonicalForm& cf = canonical_form();
    Int count = 1;
    for (const RingElem& d : cf.divisors) count *= d.num;
    if (cf.free_rank == 0) return count;
    if (ring_.is_finite()) {
        for (int i = 0; i < cf.free_rank; ++i) count *= ring_.modulus();
        return count;
    }
    return std::nullopt;
}

ModuleHom::ModuleHom(FPModule source, FPModule target, Matrix action)
    : source_(std::move(source)), target_(std::move(target)), action_(std::move(action)) {
    if (action_.rows() != target_.generators() || action_.cols() != source_.generators())
        throw std::invalid_argument("hom action has wrong shape");
    if (source_.ring() != target_.ring())
        throw std::invalid_argument("hom between different rings");
    if (!in_column_span(target_.relations(), action_ * source_.relations()))
        throw std::invalid_argument("hom is not well defined on the presentation");
}

ModuleHom ModuleHom::zero(const FPModule& source, const FPModule& target) {
    return ModuleHom(source, target,
                     Matrix(source.ring(), target.generators(), source.generators()));
}

ModuleHom ModuleHom::identity(const FPModule& m) {
    return ModuleHom(m, m, Matrix::identity(m.ring(), m.generators()));
}

ModuleHom ModuleHom::compose(const ModuleHom& inner) const {
    return ModuleHom(inner.source_, target_, action_ * inner.action_);
}

ModuleHom ModuleHom::operator+(const ModuleHom& o) const {
    return ModuleHom(source_, target_, action_ + o.action_);
}

ModuleHom ModuleHom::operator-(const ModuleHom& o) const {
    return ModuleHom(source_, target_, action_ - o.action_);
}

ModuleHom ModuleHom::negated() const { return ModuleHom(source_, target_, action_.negated()); }

bool ModuleHom::is_zero_hom() const {
    return in_column_span(target_.relations(), action_);
}

bool ModuleHom::equals(const ModuleHom& o) const {
    return in_column_span(target_.relations(), action_ - o.action_);
}

bool ModuleHom::is_injective() const { return kic(*this).kernel.is_zero_module(); }

bool ModuleHom::is_surjective() const {
    Matrix span = action_.hstack(target_.relations());
    return in_column_span(span, Matrix::identity(source_.ring(), target_.generators()));
}

std::optional<ModuleHom> ModuleHom::inverse() const {
    const RingSpec& R = source_.ring();
    MatEqSystem sys(R);
    int g = sys.add_unknown(source_.generators(), target_.generators());
    int c1 = sys.add_unknown(source_.relations().cols(), source_.generators());
    int c2 = sys.add_unknown(target_.relations().cols(), target_.generators());
    int c3 = sys.add_unknown(source_.relations().cols(), target_.relations().cols());
    // g o f == id_source modulo source relations
    sys.add_equation({MatEqSystem::Term{g, std::nullopt, action_},
                      MatEqSystem::Term{c1, source_.relations(), std::nullopt}},
                     Matrix::identity(R, source_.generators()));
    // f o g == id_target modulo target relations
    sys.add_equation({MatEqSystem::Term{g, action_, std::nullopt},
                      MatEqSystem::Term{c2, target_.relations(), std::nullopt}},
                     Matrix::identity(R, target_.generators()));
    // g well defined: g * rel_target == rel_source * c3
    sys.add_equation({MatEqSystem::Term{g, std::nullopt, target_.relations()},
                      MatEqSystem::Term{c3, source_.relations().negated(), std::nullopt}},
                     Matrix(R, source_.generators(), target_.relations().cols()));
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    return ModuleHom(target_, source_, (*sol)[0]);
}

bool ModuleHom::is_isomorphism() const { return inverse().has_value(); }

FPModule subquotient_module(const FPModule& ambient, const Matrix& num, const Matrix& den) {
    if (num.rows() != ambient.generators() ||
        (den.cols() > 0 && den.rows() != ambient.generators()))
        throw std::invalid_argument("subquotient generator matrices must live in the ambient");
    Matrix combined = num.hstack(den).hstack(ambient.relations());
    Matrix K = kernel(combined);
    Matrix rels = K.take_rows(0, num.cols());
    return FPModule(ambient.ring(), num.cols(), rels);
}

KernelImageCokernel kic(const ModuleHom& f) {
    const RingSpec& R = f.source().ring();
    const Matrix& F = f.action();
    const Matrix& relS = f.source().relations();
    const Matrix& relT = f.target().relations();

    // generators of {x : F x lies in im(relT)}, i.e. the kernel preimage
    Matrix K = kernel(F.hstack(relT)).take_rows(0, F.cols());
    FPModule ker = subquotient_module(f.source(), K, Matrix(R, f.source().generators(), 0));
    ModuleHom ker_incl(ker, f.source(), K);

    // the image is generated by the columns of F; its relations are exactly K
    FPModule img(R, F.cols(), K);
    ModuleHom img_incl(img, f.target(), F);
    ModuleHom img_proj(f.source(), img, Matrix::identity(R, F.cols()));

    FPModule coker(R, f.target().generators(), F.hstack(relT));
    ModuleHom coker_proj(f.target(), coker, Matrix::identity(R, f.target().generators()));

    return KernelImageCokernel{std::move(ker),  std::move(ker_incl), std::move(img),
                               std::move(img_incl), std::move(img_proj), std::move(coker),
                               std::move(coker_proj)};
}

FPModule tensor_modules(const FPModule& m, const FPModule& n) {
    if (m.ring() != n.ring()) throw std::invalid_argument("tensor over different rings");
    const RingSpec& R = m.ring();
    Matrix left = Matrix::kron(m.relations(), Matrix::identity(R, n.generators()));
    Matrix right = Matrix::kron(Matrix::identity(R, m.generators()), n.relations());
    return FPModule(R, m.generators() * n.generators(), left.hstack(right));
}

ModuleHom tensor_homs(const ModuleHom& f, const ModuleHom& g) {
    FPModule src = tensor_modules(f.source(), g.source());
    FPModule tgt = tensor_modules(f.target(), g.target());
    return ModuleHom(std::move(src), std::move(tgt), Matrix::kron(f.action(), g.action()));
}

HomModule hom_modules(const FPModule& m, const FPModule& n) {
    if (m.ring() != n.ring()) throw std::invalid_argument("hom over different rings");
    const RingSpec& R = m.ring();
    const int a = m.generators(), b = n.generators();
    const int r = m.relations().cols(), s = n.relations().cols();

    // carrier: vec(X) with X * rel_m inside im(rel_n)
    Matrix phi = Matrix::kron(m.relations().transposed(), Matrix::identity(R, b));
    Matrix slack = Matrix::kron(Matrix::identity(R, r), n.relations());
    Matrix Z = kernel(phi.hstack(slack)).take_rows(0, a * b);

    // trivial homs: X == rel_n * C
    Matrix W = Matrix::kron(Matrix::identity(R, a), n.relations());

    Matrix rels = kernel(Z.hstack(W)).take_rows(0, Z.cols());
    FPModule hom(R, Z.cols(), rels);

    std::vector<Matrix> gens;
    for (int j = 0; j < Z.cols(); ++j)
        gens.push_back(Matrix::unvec(R, Z.take_cols(j, 1), b, a));
    return HomModule{std::move(hom), std::move(gens), m, n};
}

Matrix hom_coordinates(const HomModule& h, const Matrix& action) {
    const RingSpec& R = h.module.ring();
    const int a = h.hom_source.generators(), b = h.hom_target.generators();
    Matrix Z(R, a * b, static_cast<int>(h.generator_actions.size()));
    for (size_t j = 0; j < h.generator_actions.size(); ++j) {
        Matrix v = h.generator_actions[j].vec();
        for (int i = 0; i < a * b; ++i) Z.set(i, static_cast<int>(j), v.at(i, 0));
    }
    Matrix W = Matrix::kron(Matrix::identity(R, a), h.hom_target.relations());
    auto sol = solve_linear(Z.hstack(W), action.vec());
    if (!sol) throw std::invalid_argument("action is not a hom between the given modules");
    return sol->take_rows(0, Z.cols());
}

Matrix hom_action_from_coordinates(const HomModule& h, const Matrix& coords) {
    const RingSpec& R = h.module.ring();
    Matrix X(R, h.hom_target.generators(), h.hom_source.generators());
    for (size_t j = 0; j < h.generator_actions.size(); ++j) {
        const RingElem& c = coords.at(static_cast<int>(j), 0);
        if (R.is_zero(c)) continue;
        X = X + h.generator_actions[j].scaled(c);
    }
    return X;
}

namespace {

RingElem module_exponent(const FPModule& m) {
    // smallest ideal annihilating the module; exists when the rank part vanishes
    const auto& cf = m.canonical_form();
    if (cf.free_rank != 0)
        throw std::domain_error("character dual requires a finite module");
    const RingSpec& R = m.ring();
    if (cf.divisors.empty()) return R.one();
    return cf.divisors.back();  // divisibility chain makes the last one the exponent
}

}  // namespace

DualModule character_dual(const FPModule& m, const RingElem& dualizer) {
    const RingSpec& R = m.ring();
    if (R.is_finite()) {
        HomModule h = hom_modules(m, FPModule::free(R, 1));
        return DualModule{h.module, std::move(h), R.zero()};
    }
    // over the domains, dualize into R/(e) for an exponent e killing M
    RingElem e = dualizer;
    if (R.is_zero(e) || !R.divides(module_exponent(m), e))
        throw std::domain_error("dualizer must be a nonzero multiple of the module exponent");
    HomModule h = hom_modules(m, FPModule::cyclic(R, e));
    return DualModule{h.module, std::move(h), e};
}

DualModule character_dual(const FPModule& m) {
    const RingSpec& R = m.ring();
    if (R.is_finite()) return character_dual(m, R.zero());
    return character_dual(m, module_exponent(m));
}

ModuleHom dual_hom(const ModuleHom& f, const DualModule& dual_of_target,
                   const DualModule& dual_of_source) {
    const RingSpec& R = f.source().ring();
    const int cols = dual_of_target.dual.generators();
    Matrix act(R, dual_of_source.dual.generators(), cols);
    for (int j = 0; j < cols; ++j) {
        Matrix composed = dual_of_target.hom_data.generator_actions[j] * f.action();
        Matrix coords = hom_coordinates(dual_of_source.hom_data, composed);
        for (int i = 0; i < act.rows(); ++i) act.set(i, j, coords.at(i, 0));
    }
    return ModuleHom(dual_of_target.dual, dual_of_source.dual, std::move(act));
}

void validate_ses(const SESModules& s) {
    if (s.inj.target().generators() != s.surj.source().generators() ||
        s.inj.target().ring() != s.surj.source().ring() ||
        !(s.inj.target().relations() == s.surj.source().relations()))
        throw std::invalid_argument("ses: middle modules disagree");
    if (!s.surj.compose(s.inj).is_zero_hom())
        throw std::invalid_argument("ses: composite is not zero");
    if (!s.inj.is_injective()) throw std::invalid_argument("ses: left map not injective");
    if (!s.surj.is_surjective()) throw std::invalid_argument("ses: right map not surjective");
    // ker(surj) must be generated by the image of inj together with relations
    Matrix K = kernel(s.surj.action().hstack(s.surj.target().relations()))
                   .take_rows(0, s.surj.source().generators());
    Matrix span = s.inj.action().hstack(s.inj.target().relations());
    if (!in_column_span(span, K))
        throw std::invalid_argument("ses: kernel exceeds the image of the inclusion");
}

PurityCertificate is_pure_ses(const SESModules& s) {
    validate_ses(s);
    const RingSpec& R = s.inj.source().ring();
    const FPModule& L = s.inj.source();
    const FPModule& M = s.inj.target();

    MatEqSystem sys(R);
    int rho = sys.add_unknown(L.generators(), M.generators());
    int c1 = sys.add_unknown(L.relations().cols(), M.relations().cols());
    int c2 = sys.add_unknown(L.relations().cols(), L.generators());
    sys.add_equation({MatEqSystem::Term{rho, std::nullopt, M.relations()},
                      MatEqSystem::Term{c1, L.relations().negated(), std::nullopt}},
                     Matrix(R, L.generators(), M.relations().cols()));
    sys.add_equation({MatEqSystem::Term{rho, std::nullopt, s.inj.action()},
                      MatEqSystem::Term{c2, L.relations(), std::nullopt}},
                     Matrix::identity(R, L.generators()));
    if (auto sol = sys.solve())
        return PurityCertificate{true, (*sol)[0], std::nullopt};

    // not pure; find a cyclic witness whose tensor breaks left-exactness
    std::vector<RingElem> candidates;
    auto push_divisors = [&](const FPModule& mod) {
        for (const RingElem& d : mod.canonical_form().divisors) candidates.push_back(d);
    };
    push_divisors(s.surj.target());
    push_divisors(M);
    push_divisors(L);
    for (const RingElem& d : candidates) {
        ModuleHom t = tensor_homs(s.inj, ModuleHom::identity(FPModule::cyclic(R, d)));
        if (!t.is_injective()) return PurityCertificate{false, std::nullopt, d};
    }
    return PurityCertificate{false, std::nullopt, std::nullopt};
}

std::vector<Matrix> enumerate_elements(const FPModule& m) {
    auto count = m.element_count();
    if (!count) throw std::domain_error("enumerate_elements: module is infinite");
    const RingSpec& R = m.ring();
    const auto& cf = m.canonical_form();
    const int g = m.generators();

    // ranges per diagonal coordinate of the canonical presentation
    std::vector<Int> range(g);
    for (int i = 0; i < g; ++i) {
        if (i < static_cast<int>(cf.full_diagonal.size()) && !R.is_zero(cf.full_diagonal[i])) {
            RingElem d = cf.full_diagonal[i];
            range[i] = R.is_unit(d) ? Int(1) : d.num;
        } else {
            range[i] = R.modulus();  // free coordinate over a finite ring
        }
    }
    std::vector<Matrix> out;
    std::vector<Int> v(g, 0);
    for (;;) {
        Matrix y(R, g, 1);
        for (int i = 0; i < g; ++i) y.set(i, 0, R.from_int(v[i]));
        out.push_back(cf.from_diagonal * y);
        int i = 0;
        while (i < g && ++v[i] == range[i]) v[i++] = 0;
        if (i == g) break;
    }
    return out;
}

std::optional<Int> hom_count(const FPModule& m, const FPModule& n) {
    return hom_modules(m, n).module.element_count();
}

std::vector<Matrix> enumerate_homs(const FPModule& m, const FPModule& n) {
    HomModule h = hom_modules(m, n);
    std::vector<Matrix> out;
    for (const Matrix& coords : enumerate_elements(h.module))
        out.push_back(hom_action_from_coordinates(h, coords));
    return out;
}

}  // namespace puremin
