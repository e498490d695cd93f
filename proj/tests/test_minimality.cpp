#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "puremin/minimality.hpp"
#include "puremin/prng.hpp"

using namespace puremin;

namespace {

ChainComplex two_term(const RingSpec& R, long long d, int top_degree = 1) {
    return ChainComplex::bounded(R, top_degree - 1,
                                 {FPModule::free(R, 1), FPModule::free(R, 1)},
                                 {Matrix::from_int_rows(R, {{d}})});
}

ChainComplex dold_complex() {
    RingSpec R4 = RingSpec::residues(4);
    return ChainComplex::periodic(R4, {FPModule::free(R4, 1)},
                                  {Matrix::from_int_rows(R4, {{2}})});
}

std::pair<Matrix, Matrix> random_invertible(const RingSpec& R, int n, Prng& rng) {
    Matrix t = Matrix::identity(R, n);
    Matrix tinv = Matrix::identity(R, n);
    for (int step = 0; step < 3 * n + 2; ++step) {
        int i = static_cast<int>(rng.below(n));
        int j = static_cast<int>(rng.below(n));
        if (i == j) continue;
        RingElem q = R.from_int(rng.range(-2, 2));
        Matrix e = Matrix::identity(R, n);
        Matrix einv = Matrix::identity(R, n);
        e.set(i, j, q);
        einv.set(i, j, R.neg(q));
        t = t * e;
        tinv = einv * tinv;
    }
    return {t, tinv};
}

// random bounded complex of free modules with d*d == 0, built by sampling
// each differential inside the kernel of the previous one
ChainComplex random_free_complex(const RingSpec& R, Prng& rng, int max_len = 4,
                                 int max_rank = 3, int bound = 4) {
    int len = 2 + static_cast<int>(rng.below(max_len - 1));
    std::vector<int> ranks;
    for (int i = 0; i < len; ++i) ranks.push_back(1 + static_cast<int>(rng.below(max_rank)));
    std::vector<FPModule> mods;
    for (int r : ranks) mods.push_back(FPModule::free(R, r));
    std::vector<Matrix> diffs;  // diffs[k]: mods[k+1] -> mods[k]
    Matrix prev(R, 0, 0);
    for (int k = len - 2; k >= 0; --k) {
        // want d_k : ranks[k+1] -> ranks[k] with (previous d) o d == 0,
        // built from the transpose kernel
        Matrix d(R, ranks[k], ranks[k + 1]);
        if (k == len - 2) {
            for (int i = 0; i < d.rows(); ++i)
                for (int j = 0; j < d.cols(); ++j)
                    d.set(i, j, R.from_int(rng.range(-bound, bound)));
        } else {
            Matrix K = kernel(prev.transposed());  // columns span rows allowed
            Matrix C(R, K.cols(), ranks[k]);
            for (int i = 0; i < C.rows(); ++i)
                for (int j = 0; j < C.cols(); ++j)
                    C.set(i, j, R.from_int(rng.range(-bound, bound)));
            d = (K * C).transposed();
        }
        prev = d;
        diffs.insert(diffs.begin(), d);
    }
    // order: diffs[k] maps mods[k+1] -> mods[k]; we built from the top down
    std::vector<Matrix> ordered;
    for (int k = 0; k < len - 1; ++k) ordered.push_back(diffs[k]);
    ChainComplex c = ChainComplex::bounded(R, 0, mods, ordered);
    require_valid(c);
    return c;
}

}  // namespace

TEST_CASE("reduction of a disk eliminates everything") {
    RingSpec Z = RingSpec::integers();
    ChainComplex disk = two_term(Z, 1);
    ReductionTrace t = reduce_complex(disk);
    CHECK(t.reduced.is_zero_complex());
    CHECK_FALSE(t.split_part.is_zero_complex());
    CHECK(t.moves.size() == 1);
    std::string why;
    CHECK_MESSAGE(verify_reduction(disk, t, &why), why);
}

TEST_CASE("reduction finds a scrambled disk summand") {
    RingSpec Z = RingSpec::integers();
    Prng rng(99);
    ChainComplex base = direct_sum_complexes(two_term(Z, 2), two_term(Z, 1));
    // conjugate by random unimodular transforms
    std::vector<FPModule> mods;
    std::vector<Matrix> diffs;
    std::vector<Matrix> t, tinv;
    for (int i : base.degrees()) {
        auto [a, b] = random_invertible(Z, base.module_at(i).generators(), rng);
        t.push_back(a);
        tinv.push_back(b);
        mods.push_back(base.module_at(i));
    }
    int idx = 0;
    for (int i : base.degrees()) {
        if (i > base.min_degree())
            diffs.push_back(t[idx - 1] * base.differential_at(i) * tinv[idx]);
        ++idx;
    }
    ChainComplex scrambled = ChainComplex::bounded(Z, 0, mods, diffs);
    require_valid(scrambled);
    // oracle: elementary divisors of the scrambled differential are (1, 2)
    CHECK(elementary_divisors(scrambled.differential_at(1)) ==
          std::vector<RingElem>{Z.one(), Z.from_int(2)});

    ReductionTrace tr = reduce_complex(scrambled);
    std::string why;
    CHECK_MESSAGE(verify_reduction(scrambled, tr, &why), why);
    ChainComplex red = tr.reduced.trimmed();
    CHECK(elementary_divisors(red.differential_at(1)) ==
          std::vector<RingElem>{Z.from_int(2)});
    CHECK(is_pure_minimal(tr.reduced) == TriBool::yes);
}

TEST_CASE("the Dold complex does not reduce") {
    ReductionTrace t = reduce_complex(dold_complex());
    CHECK(t.moves.empty());
    CHECK(t.split_part.is_zero_complex());
    CHECK(t.reduced.module_at(0).generators() == 1);
    std::string why;
    CHECK_MESSAGE(verify_reduction(dold_complex(), t, &why), why);
}

TEST_CASE("reduction over a composite residue ring works componentwise") {
    RingSpec R6 = RingSpec::residues(6);
    // multiplication by 2 has a unit inverse on the 3-part only
    ChainComplex c = two_term(R6, 2);
    ReductionTrace t = reduce_complex(c);
    std::string why;
    CHECK_MESSAGE(verify_reduction(c, t, &why), why);
    CHECK_FALSE(t.split_part.is_zero_complex());
    CHECK(is_split_minimal(c) == TriBool::no);
    // the surviving part is the 2-component
    CHECK(homology_at(t.reduced, 0).element_count() == Int(2));
    CHECK(homology_at(t.reduced, 1).element_count() == Int(2));
}

TEST_CASE("randomized reduction soundness across rings and shapes") {
    std::vector<RingSpec> rings = {RingSpec::integers(), RingSpec::residues(4),
                                   RingSpec::residues(6), RingSpec::invert_primes({Int(5)}),
                                   RingSpec::local_at(2)};
    Prng rng(2024);
    for (const RingSpec& R : rings) {
        for (int trial = 0; trial < 12; ++trial) {
            ChainComplex c = random_free_complex(R, rng);
            ReductionTrace t = reduce_complex(c);
            std::string why;
            std::string ctx = why + " over " + R.name() + " on " + c.describe();
            CHECK_MESSAGE(verify_reduction(c, t, &why), ctx);
            // idempotence
            ReductionTrace t2 = reduce_complex(t.reduced);
            CHECK(t2.moves.empty());
        }
    }
}

TEST_CASE("periodic reduction with period one splits conjugated disks") {
    RingSpec Z = RingSpec::integers();
    // d = v w^T with w^T v == 0 and unit content: a disk plus a sphere in
    // disguise; only diagonal entries of d are units
    Matrix d = Matrix::from_int_rows(Z, {{1, 3, 2}, {3, 9, 6}, {-5, -15, -10}});
    ChainComplex c = ChainComplex::periodic(Z, {FPModule::free(Z, 3)}, {d});
    require_valid(c);
    ReductionTrace t = reduce_complex(c);
    std::string why;
    CHECK_MESSAGE(verify_reduction(c, t, &why), why);
    // one disk must split off, leaving a rank-one sphere with zero differential
    CHECK(t.split_part.module_at(0).generators() == 2);
    CHECK(t.reduced.module_at(0).generators() == 1);
    CHECK(t.reduced.differential_at(0).is_zero());
    CHECK(is_split_minimal(t.reduced) == TriBool::yes);
}

TEST_CASE("split and pure minimality decisions") {
    RingSpec Rf = RingSpec::invert_primes({Int(5)});
    ChainComplex exaF = two_term(Rf, 2);
    CHECK(is_split_minimal(exaF) == TriBool::yes);
    CHECK(is_pure_minimal(exaF) == TriBool::yes);

    RingSpec Z = RingSpec::integers();
    CHECK(is_split_minimal(two_term(Z, 1)) == TriBool::no);
    CHECK(is_split_minimal(dold_complex()) == TriBool::yes);
    CHECK(is_pure_minimal(dold_complex()) == TriBool::yes);
}

TEST_CASE("homotopic minimality") {
    SUBCASE("Dold complex is minimal by exhaustion over 16 homotopies") {
        MinimalityResult m = is_minimal(dold_complex());
        CHECK(m.value == TriBool::yes);
        CHECK(m.method == "exhaustive homotopy search");
    }

    SUBCASE("the localization example is split-minimal but not minimal") {
        RingSpec Rf = RingSpec::invert_primes({Int(5)});
        ChainComplex exaF = two_term(Rf, 2);
        MinimalityResult m = is_minimal(exaF);
        REQUIRE(m.value == TriBool::no);
        REQUIRE(m.witness.has_value());
        // the first witness found is sigma == [1]: 1 + 2*1 == 3 is not a unit
        Matrix sigma = m.witness->component_at(exaF, exaF, 0);
        CHECK(sigma == Matrix::from_int_rows(Rf, {{1}}));
        // the witness really produces a non-isomorphism homotopic to the identity
        Matrix phi = Matrix::identity(Rf, 1) + exaF.differential_at(1) * sigma;
        CHECK_FALSE(ModuleHom(exaF.module_at(0), exaF.module_at(0), phi).is_isomorphism());
    }

    SUBCASE("disks admit a collapsing homotopy") {
        RingSpec Z = RingSpec::integers();
        MinimalityResult m = is_minimal(two_term(Z, 1));
        CHECK(m.value == TriBool::no);
        REQUIRE(m.witness.has_value());
    }

    SUBCASE("witness construction over finite local rings") {
        RingSpec R4 = RingSpec::residues(4);
        ChainComplex c = direct_sum_complexes(two_term(R4, 1), two_term(R4, 2, 0));
        MinimalityResult m = is_minimal(c);
        CHECK(m.value == TriBool::no);
        REQUIRE(m.witness.has_value());
    }

    SUBCASE("spheres over the integers are minimal via the radical criterion") {
        RingSpec Z = RingSpec::integers();
        ChainComplex spheres = ChainComplex::bounded(
            Z, 0, {FPModule::free(Z, 2), FPModule::free(Z, 1)}, {Matrix(Z, 2, 1)});
        MinimalityResult m = is_minimal(spheres);
        CHECK(m.value == TriBool::yes);
    }

    SUBCASE("multiplication complexes over the integers collapse like the localization") {
        RingSpec Z = RingSpec::integers();
        // sigma == 1 exhibits 3 * id, which is not invertible over Z
        MinimalityResult m = is_minimal(two_term(Z, 2));
        CHECK(m.value == TriBool::no);
        REQUIRE(m.witness.has_value());
    }

    SUBCASE("torsion modules over the integers leave minimality undecided") {
        RingSpec Z = RingSpec::integers();
        // the Dold complex viewed with Z coefficients: module Z/4, periodic
        ChainComplex izdold = ChainComplex::periodic(
            Z, {FPModule::cyclic(Z, Z.from_int(4))}, {Matrix::from_int_rows(Z, {{2}})});
        require_valid(izdold);
        MinimalityResult m = is_minimal(izdold);
        CHECK(m.value == TriBool::unknown);
    }
}

TEST_CASE("diagnosis of the named complexes") {
    SUBCASE("Dold") {
        DiagnosisReport r = diagnose(dold_complex());
        CHECK(r.acyclic);
        CHECK_FALSE(r.pure_acyclic);
        CHECK_FALSE(r.contractible);
        CHECK(r.split_minimal == TriBool::yes);
        CHECK(r.pure_minimal == TriBool::yes);
        CHECK(r.minimal == TriBool::yes);
    }
    SUBCASE("localization example") {
        RingSpec Rf = RingSpec::invert_primes({Int(5)});
        DiagnosisReport r = diagnose(two_term(Rf, 2));
        CHECK_FALSE(r.acyclic);
        CHECK(r.split_minimal == TriBool::yes);
        CHECK(r.pure_minimal == TriBool::yes);
        CHECK(r.minimal == TriBool::no);
        REQUIRE(r.minimal_witness.has_value());
    }
}

TEST_CASE("free resolutions of modules") {
    RingSpec Z = RingSpec::integers();

    SUBCASE("one-relation module") {
        FPModule z6 = FPModule::cyclic(Z, Z.from_int(6));
        ResolutionResult r = free_resolution(z6, 8);
        CHECK(r.complete);
        CHECK(r.resolution.max_degree() == 1);
        CHECK(r.resolution.differential_at(1) == Matrix::from_int_rows(Z, {{6}}));
        CHECK(classify_map(r.to_input).is_qis);
    }

    SUBCASE("periodic syzygies over a non-regular residue ring") {
        RingSpec R4 = RingSpec::residues(4);
        FPModule z2 = FPModule::cyclic(R4, R4.from_int(2));
        ResolutionResult r = free_resolution(z2, 6);
        CHECK_FALSE(r.complete);
        REQUIRE(r.syzygies.size() >= 2);
        CHECK(r.syzygies[0].is_isomorphic_to(z2));
        CHECK(r.syzygies[1].is_isomorphic_to(z2));
        // every differential is multiplication by 2
        for (int i = 1; i <= r.resolution.max_degree(); ++i)
            CHECK(r.resolution.differential_at(i) == Matrix::from_int_rows(R4, {{2}}));
    }

    SUBCASE("free modules resolve as themselves") {
        ResolutionResult r = free_resolution(FPModule::free(Z, 3), 4);
        CHECK(r.complete);
        CHECK(r.resolution.max_degree() == 0);
        CHECK(r.resolution.module_at(0).generators() == 3);
    }
}

TEST_CASE("free resolutions of bounded complexes") {
    RingSpec Z = RingSpec::integers();
    Prng rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        // complexes with torsion modules: random presentations
        int g0 = 1 + static_cast<int>(rng.below(2));
        Matrix rel(Z, g0, 1);
        rel.set(0, 0, Z.from_int(rng.range(2, 5)));
        FPModule m0(Z, g0, rel);
        FPModule m1 = FPModule::free(Z, 1);
        Matrix d(Z, g0, 1);
        d.set(0, 0, Z.from_int(rng.range(0, 3) * 2));
        ChainComplex c = ChainComplex::bounded(Z, 0, {m0, m1}, {d});
        if (!validate_complex(c).empty()) continue;
        ResolutionResult r = free_resolution(c, 6);
        REQUIRE(validate_complex(r.resolution).empty());
        for (int i : r.resolution.degrees())
            CHECK(r.resolution.module_at(i).relations().cols() == 0);
        CHECK(classify_map(r.to_input).is_qis);
    }
}

TEST_CASE("dimension computations") {
    RingSpec Z = RingSpec::integers();

    SUBCASE("torsion detection over the integers") {
        DimensionResult d = dimension(FPModule::cyclic(Z, Z.from_int(6)),
                                      DimensionKind::projective, 8);
        CHECK(d.status == DimensionResult::Status::finite);
        CHECK(d.value == 1);
        DimensionResult f = dimension(FPModule::free(Z, 2), DimensionKind::projective, 8);
        CHECK(f.status == DimensionResult::Status::finite);
        CHECK(f.value == 0);
    }

    SUBCASE("random modules match the torsion-freeness oracle") {
        Prng rng(505);
        for (int trial = 0; trial < 60; ++trial) {
            int g = 1 + static_cast<int>(rng.below(3));
            int r = static_cast<int>(rng.below(4));
            Matrix rel(Z, g, r);
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < r; ++j) rel.set(i, j, Z.from_int(rng.range(-4, 4)));
            FPModule m(Z, g, rel);
            if (m.is_zero_module()) continue;
            DimensionResult d = dimension(m, DimensionKind::projective, 8);
            bool torsion_free = m.canonical_form().divisors.empty();
            CHECK(d.status == DimensionResult::Status::finite);
            CHECK(d.value == (torsion_free ? 0 : 1));
            DimensionResult fd = dimension(m, DimensionKind::flat, 8);
            CHECK(fd.value == d.value);
        }
    }

    SUBCASE("infinite dimension by syzygy periodicity") {
        RingSpec R4 = RingSpec::residues(4);
        DimensionResult d = dimension(FPModule::cyclic(R4, R4.from_int(2)),
                                      DimensionKind::projective, 8);
        CHECK(d.status == DimensionResult::Status::infinite);
    }

    SUBCASE("zero module") {
        DimensionResult d = dimension(FPModule::zero(Z), DimensionKind::projective, 8);
        CHECK(d.status == DimensionResult::Status::zero_object);
    }
}

TEST_CASE("pure-minimal replacements") {
    RingSpec Z = RingSpec::integers();

    SUBCASE("a torsion module becomes its two-term resolution") {
        ReplacementResult r = pure_minimal_replacement(FPModule::cyclic(Z, Z.from_int(2)), 8);
        ChainComplex red = r.replacement.trimmed();
        CHECK(red.max_degree() == 1);
        CHECK(red.differential_at(1) == Matrix::from_int_rows(Z, {{2}}));
        CHECK(is_pure_minimal(r.replacement) == TriBool::yes);
        CHECK(classify_map(r.roof_to_input).is_qis);
        CHECK(classify_map(r.roof_to_replacement).is_qis);
    }

    SUBCASE("disks disappear from the replacement") {
        ChainComplex c = direct_sum_complexes(
            two_term(Z, 1), one_term_complex(FPModule::cyclic(Z, Z.from_int(2)), 0));
        ReplacementResult r = pure_minimal_replacement(c, 8);
        ChainComplex red = r.replacement.trimmed();
        CHECK(red.max_degree() == 1);
        CHECK(is_pure_minimal(r.replacement) == TriBool::yes);
        for (int i : red.degrees())
            CHECK(homology_at(red, i).canonical_form().same_class(
                homology_at(c, i).canonical_form()));
    }

    SUBCASE("the zero complex replaces itself") {
        ReplacementResult r = pure_minimal_replacement(ChainComplex::zero_bounded(Z), 8);
        CHECK(r.replacement.is_zero_complex());
    }
}
