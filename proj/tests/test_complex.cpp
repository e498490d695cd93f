#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "puremin/complex.hpp"
#include "puremin/prng.hpp"

using namespace puremin;

namespace {

// 0 -> R --d--> R -> 0 in degrees [deg, deg-1]
ChainComplex two_term(const RingSpec& R, long long d, int top_degree = 1) {
    std::vector<FPModule> mods = {FPModule::free(R, 1), FPModule::free(R, 1)};
    std::vector<Matrix> diffs = {Matrix::from_int_rows(R, {{d}})};
    return ChainComplex::bounded(R, top_degree - 1, std::move(mods), std::move(diffs));
}

ChainComplex sphere(const RingSpec& R, int degree = 0, int rank = 1) {
    return ChainComplex::bounded(R, degree, {FPModule::free(R, rank)}, {});
}

ChainComplex sphere_of(const FPModule& m, int degree = 0) {
    return ChainComplex::bounded(m.ring(), degree, {m}, {});
}

ChainComplex dold_complex() {
    RingSpec R4 = RingSpec::residues(4);
    return ChainComplex::periodic(R4, {FPModule::free(R4, 1)},
                                  {Matrix::from_int_rows(R4, {{2}})});
}

// conjugate every degree of a bounded complex by invertible matrices
ChainComplex conjugated(const ChainComplex& c, const std::vector<Matrix>& t,
                        const std::vector<Matrix>& tinv) {
    std::vector<FPModule> mods;
    std::vector<Matrix> diffs;
    int idx = 0;
    for (int i : c.degrees()) {
        mods.push_back(FPModule(c.ring(), c.module_at(i).generators(),
                                t[idx] * c.module_at(i).relations()));
        ++idx;
    }
    idx = 0;
    for (int i : c.degrees()) {
        if (i == c.min_degree()) {
            ++idx;
            continue;
        }
        diffs.push_back(t[idx - 1] * c.differential_at(i) * tinv[idx]);
        ++idx;
    }
    return ChainComplex::bounded(c.ring(), c.min_degree(), std::move(mods), std::move(diffs));
}

std::pair<Matrix, Matrix> random_invertible(const RingSpec& R, int n, Prng& rng) {
    Matrix t = Matrix::identity(R, n);
    Matrix tinv = Matrix::identity(R, n);
    for (int step = 0; step < 3 * n; ++step) {
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

}  // namespace

TEST_CASE("validation of complexes") {
    CHECK(validate_complex(dold_complex()).empty());  // 2*2 == 0 in Z/4

    RingSpec Z = RingSpec::integers();
    std::vector<FPModule> mods = {FPModule::free(Z, 1), FPModule::free(Z, 1),
                                  FPModule::free(Z, 1)};
    std::vector<Matrix> diffs = {Matrix::from_int_rows(Z, {{1}}),
                                 Matrix::from_int_rows(Z, {{2}})};
    ChainComplex bad = ChainComplex::bounded(Z, 0, mods, diffs);
    auto defects = validate_complex(bad);
    REQUIRE_FALSE(defects.empty());
    CHECK(defects[0].degree == 2);

    CHECK(validate_complex(ChainComplex::zero_bounded(Z)).empty());
}

TEST_CASE("subquotients and homology") {
    SUBCASE("Dold cycles are the square multiples") {
        ChainComplex dold = dold_complex();
        auto z = subquotient_at(dold, SubquotientKind::cycles, 0);
        CHECK(z.module.element_count() == Int(2));
        CHECK(homology_at(dold, 0).is_zero_module());
        CHECK(is_acyclic(dold));
    }

    SUBCASE("sphere homology") {
        RingSpec Z = RingSpec::integers();
        ChainComplex s = sphere(Z);
        FPModule h0 = homology_at(s, 0);
        CHECK(h0.canonical_form().free_rank == 1);
        CHECK(h0.canonical_form().divisors.empty());
        CHECK_FALSE(is_acyclic(s));
    }

    SUBCASE("two-term multiplication complex") {
        RingSpec Z = RingSpec::integers();
        ChainComplex k2 = two_term(Z, 2);
        FPModule h0 = homology_at(k2, 0);
        CHECK(h0.canonical_form().divisors.size() == 1);
        CHECK(h0.canonical_form().divisors[0] == Z.from_int(2));
        CHECK(homology_at(k2, 1).is_zero_module());

        ChainComplex disk = two_term(Z, 1);
        CHECK(is_acyclic(disk));
    }
}

TEST_CASE("contractibility") {
    RingSpec Z = RingSpec::integers();
    Homotopy h;
    CHECK(is_contractible(two_term(Z, 1), &h));
    CHECK(witnesses_homotopy(h, ChainMap::identity(two_term(Z, 1)),
                             ChainMap::zero(two_term(Z, 1), two_term(Z, 1))));
    CHECK_FALSE(is_contractible(sphere(Z)));
    // 4 sigma == 1 has no solution in Z/4
    CHECK_FALSE(is_contractible(dold_complex()));
    CHECK(is_contractible(ChainComplex::zero_bounded(Z)));
}

TEST_CASE("pure acyclicity") {
    CHECK_FALSE(is_pure_acyclic(dold_complex()));
    RingSpec Z = RingSpec::integers();
    CHECK(is_pure_acyclic(ChainComplex::zero_bounded(Z)));
    CHECK(is_pure_acyclic(two_term(Z, 1)));
    // acyclic periodic complex over the von Neumann regular ring Z/6
    RingSpec R6 = RingSpec::residues(6);
    ChainComplex alt = ChainComplex::periodic(
        R6, {FPModule::free(R6, 2)},
        {Matrix::from_int_rows(R6, {{0, 2}, {3, 0}})});
    REQUIRE(validate_complex(alt).empty());
    CHECK(is_acyclic(alt));
    CHECK(is_pure_acyclic(alt));
}

TEST_CASE("mapping cones") {
    RingSpec Z = RingSpec::integers();

    SUBCASE("cone of the identity is contractible") {
        ChainComplex k2 = two_term(Z, 2);
        ChainComplex cone = mapping_cone(ChainMap::identity(k2));
        REQUIRE(validate_complex(cone).empty());
        CHECK(is_contractible(cone));
    }

    SUBCASE("cone from the zero complex is the target") {
        ChainComplex m = two_term(Z, 5);
        ChainMap z = ChainMap::zero(ChainComplex::zero_bounded(Z), m);
        ChainComplex cone = mapping_cone(z);
        CHECK(cone.min_degree() == m.min_degree());
        CHECK(cone.max_degree() == m.max_degree());
        for (int i : m.degrees()) {
            CHECK(cone.module_at(i).generators() == m.module_at(i).generators());
            CHECK(cone.differential_at(i) == m.differential_at(i));
        }
    }

    SUBCASE("cone of multiplication by 2 on the integral sphere") {
        ChainMap mult2(sphere(Z), sphere(Z), {{0, Matrix::from_int_rows(Z, {{2}})}});
        ChainComplex cone = mapping_cone(mult2);
        REQUIRE(validate_complex(cone).empty());
        CHECK(cone.min_degree() == 0);
        CHECK(cone.max_degree() == 1);
        CHECK(cone.differential_at(1) == Matrix::from_int_rows(Z, {{2}}));
        FPModule h0 = homology_at(cone, 0);
        CHECK(h0.canonical_form().divisors == std::vector<RingElem>{Z.from_int(2)});
    }

    SUBCASE("canonical cone sequence is degreewise split and valid") {
        ChainComplex a = two_term(Z, 3);
        ChainComplex b = two_term(Z, 4);
        // chain map: 4 * 3 == 4 * 3
        ChainMap f(a, b,
                   {{0, Matrix::from_int_rows(Z, {{4}})}, {1, Matrix::from_int_rows(Z, {{3}})}});
        ChainComplex cone = mapping_cone(f);
        REQUIRE(validate_complex(cone).empty());
        SESComplexes ses = cone_canonical_ses(f, cone);
        validate_ses(ses);
        SESFlags flags = classify_ses(ses);
        CHECK(flags.degreewise_split);
    }
}

TEST_CASE("classification of chain maps") {
    RingSpec Z = RingSpec::integers();

    SUBCASE("identity") {
        MapFlags f = classify_map(ChainMap::identity(two_term(Z, 2)));
        CHECK(f.is_qis);
        CHECK(f.is_pure_qis);
        CHECK(f.is_homotopy_equiv);
        CHECK(f.is_iso);
    }

    SUBCASE("Dold collapse is a quasi-isomorphism but not pure") {
        ChainComplex dold = dold_complex();
        ChainComplex zero = ChainComplex::zero_periodic(dold.ring(), 1);
        MapFlags f = classify_map(ChainMap::zero(dold, zero));
        CHECK(f.is_qis);
        CHECK_FALSE(f.is_pure_qis);
        CHECK_FALSE(f.is_homotopy_equiv);
        CHECK_FALSE(f.is_iso);
    }

    SUBCASE("three times the identity over the localization") {
        RingSpec R = RingSpec::invert_primes({Int(5)});
        ChainComplex fcplx = two_term(R, 2);
        ChainMap three(fcplx, fcplx,
                       {{0, Matrix::from_int_rows(R, {{3}})}, {1, Matrix::from_int_rows(R, {{3}})}});
        MapFlags f = classify_map(three);
        CHECK(f.is_pure_qis);
        CHECK(f.is_homotopy_equiv);  // homotopic to the identity via sigma = 1
        CHECK_FALSE(f.is_iso);       // 3 is not a unit here
    }
}

TEST_CASE("classification of complex sequences") {
    RingSpec Z = RingSpec::integers();

    SUBCASE("first summand of a direct sum") {
        ChainComplex a = two_term(Z, 2);
        ChainComplex b = sphere(Z);
        ChainComplex m = direct_sum_complexes(a, b);
        std::map<int, Matrix> inj_c, surj_c;
        for (int i : m.degrees()) {
            ModuleSum s = direct_sum_modules(a.module_at(i), b.module_at(i));
            inj_c.emplace(i, s.incl_left);
            surj_c.emplace(i, s.proj_right);
        }
        SESComplexes ses{ChainMap(a, m, inj_c), ChainMap(m, b, surj_c)};
        SESFlags f = classify_ses(ses);
        CHECK(f.degreewise_split);
        CHECK(f.degreewise_pure);
        CHECK(f.complex_split);
        CHECK(f.complex_pure);
    }

    SUBCASE("disk embedded with a unimodular twist splits off") {
        Prng rng(17);
        ChainComplex disk = two_term(Z, 1);
        ChainComplex m0 = direct_sum_complexes(disk, sphere(Z));
        std::vector<Matrix> t, tinv;
        for (int i : m0.degrees()) {
            auto [ti, tiv] = random_invertible(Z, m0.module_at(i).generators(), rng);
            t.push_back(ti);
            tinv.push_back(tiv);
        }
        ChainComplex m = conjugated(m0, t, tinv);
        REQUIRE(validate_complex(m).empty());
        std::map<int, Matrix> inj_c, surj_c;
        int idx = 0;
        for (int i : m.degrees()) {
            ModuleSum s = direct_sum_modules(disk.module_at(i), sphere(Z).module_at(i));
            inj_c.emplace(i, t[idx] * s.incl_left);
            surj_c.emplace(i, s.proj_right * tinv[idx]);
            ++idx;
        }
        SESComplexes ses{ChainMap(disk, m, inj_c), ChainMap(m, sphere(Z), surj_c)};
        SESFlags f = classify_ses(ses);
        CHECK(f.degreewise_split);
        CHECK(f.complex_split);  // contractible subcomplex forces a splitting
    }

    SUBCASE("disk inside a two-generator target") {
        // L: Z -=-> Z sitting inside M: Z -(1,0)^T-> Z^2
        ChainComplex l = two_term(Z, 1);
        std::vector<FPModule> mods = {FPModule::free(Z, 2), FPModule::free(Z, 1)};
        std::vector<Matrix> diffs = {Matrix::from_int_rows(Z, {{1}, {0}})};
        ChainComplex m = ChainComplex::bounded(Z, 0, mods, diffs);
        ChainComplex n = sphere(Z);
        std::map<int, Matrix> inj_c{{1, Matrix::from_int_rows(Z, {{1}})},
                                    {0, Matrix::from_int_rows(Z, {{1}, {0}})}};
        std::map<int, Matrix> surj_c{{0, Matrix::from_int_rows(Z, {{0, 1}})}};
        SESComplexes ses{ChainMap(l, m, inj_c), ChainMap(m, n, surj_c)};
        SESFlags f = classify_ses(ses);
        CHECK(f.degreewise_pure);
        CHECK(f.complex_split);
    }
}

TEST_CASE("total tensor of two Koszul complexes") {
    RingSpec Z = RingSpec::integers();
    ChainComplex k2 = two_term(Z, 2);
    ChainComplex t = total_tensor_complex(k2, k2);
    REQUIRE(validate_complex(t).empty());
    CHECK(t.min_degree() == 0);
    CHECK(t.max_degree() == 2);

    // oracle: the Koszul complex on (2, 2), built by hand
    std::vector<FPModule> mods = {FPModule::free(Z, 1), FPModule::free(Z, 2),
                                  FPModule::free(Z, 1)};
    std::vector<Matrix> diffs = {Matrix::from_int_rows(Z, {{2, 2}}),
                                 Matrix::from_int_rows(Z, {{2}, {-2}})};
    ChainComplex oracle = ChainComplex::bounded(Z, 0, mods, diffs);
    REQUIRE(validate_complex(oracle).empty());
    for (int i = 0; i <= 2; ++i)
        CHECK(homology_at(t, i).canonical_form().same_class(
            homology_at(oracle, i).canonical_form()));
    CHECK(homology_at(t, 0).canonical_form().divisors == std::vector<RingElem>{Z.from_int(2)});
    CHECK(homology_at(t, 1).canonical_form().divisors == std::vector<RingElem>{Z.from_int(2)});
    CHECK(homology_at(t, 2).is_zero_module());
}

TEST_CASE("total hom complexes") {
    RingSpec Z = RingSpec::integers();
    ChainComplex n = two_term(Z, 6);

    SUBCASE("hom out of a sphere gives the target back") {
        ChainComplex h = total_hom_complex(sphere(Z), n);
        REQUIRE(validate_complex(h).empty());
        for (int i : n.degrees())
            CHECK(homology_at(h, i).canonical_form().same_class(
                homology_at(n, i).canonical_form()));
    }

    SUBCASE("hom out of a disk is acyclic") {
        ChainComplex h = total_hom_complex(two_term(Z, 1), n);
        REQUIRE(validate_complex(h).empty());
        CHECK(is_acyclic(h));
    }

    SUBCASE("hom into modules with relations") {
        RingSpec R4 = RingSpec::residues(4);
        ChainComplex m = two_term(R4, 2);
        ChainComplex target = sphere_of(FPModule::cyclic(R4, R4.from_int(2)));
        ChainComplex h = total_hom_complex(m, target);
        REQUIRE(validate_complex(h).empty());
        // Hom(Z/4-free, Z/2): maps 1 -> x, differential composes with mult 2 == 0
        CHECK(homology_at(h, 0).element_count() == Int(2));
        CHECK(homology_at(h, -1).element_count() == Int(2));
    }
}

TEST_CASE("character dual of a complex preserves and reflects acyclicity") {
    RingSpec Z = RingSpec::integers();
    // acyclic: Z/4 -2-> Z/4 -2-> Z/4 truncated to an exact window is not acyclic,
    // so use the finite disk on Z/9 instead
    FPModule z9 = FPModule::cyclic(Z, Z.from_int(9));
    ChainComplex disk9 = ChainComplex::bounded(
        Z, 0, {z9, z9}, {Matrix::from_int_rows(Z, {{1}})});
    REQUIRE(validate_complex(disk9).empty());
    ChainComplex dual = character_dual_complex(disk9);
    REQUIRE(validate_complex(dual).empty());
    CHECK(is_acyclic(disk9));
    CHECK(is_acyclic(dual));

    ChainComplex s = sphere_of(FPModule::cyclic(Z, Z.from_int(6)));
    ChainComplex sd = character_dual_complex(s);
    CHECK_FALSE(is_acyclic(sd));
    CHECK(homology_at(sd, 0).element_count() == Int(6));

    // non-acyclic two-term finite complex: multiplication by 3 on Z/9
    ChainComplex m3 = ChainComplex::bounded(
        Z, 0, {z9, z9}, {Matrix::from_int_rows(Z, {{3}})});
    ChainComplex m3d = character_dual_complex(m3);
    REQUIRE(validate_complex(m3d).empty());
    CHECK_FALSE(is_acyclic(m3));
    CHECK_FALSE(is_acyclic(m3d));
    CHECK(homology_at(m3d, 0).element_count() == homology_at(m3, 1).element_count());
}

TEST_CASE("shift and direct sum bookkeeping") {
    RingSpec Z = RingSpec::integers();
    ChainComplex k2 = two_term(Z, 2);
    ChainComplex s = k2.shifted(3);
    REQUIRE(validate_complex(s).empty());
    CHECK(s.min_degree() == 3);
    CHECK(homology_at(s, 3).canonical_form().divisors == std::vector<RingElem>{Z.from_int(2)});

    ChainComplex sum = direct_sum_complexes(k2, sphere(Z, 5));
    REQUIRE(validate_complex(sum).empty());
    CHECK(sum.min_degree() == 0);
    CHECK(sum.max_degree() == 5);
    CHECK(sum.trimmed().max_degree() == 5);

    ChainComplex dold = dold_complex();
    ChainComplex dsh = dold.shifted(1);
    REQUIRE(validate_complex(dsh).empty());
    CHECK(is_acyclic(dsh));
}
