#pragma once

#include "puremin/json_io.hpp"
#include "puremin/prng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace puremin {

/// Deterministic generation profile: identical profile and seed give
/// identical output on every platform.
struct GenProfile {
    enum class Style {
        free_random,
        disk_sphere_sum_scrambled,
        cone_of_random_map,
        acyclic_by_construction,
    };
    RingSpec ring;
    int max_length = 5;
    int max_rank = 4;
    int entry_bound = 9;
    Style style = Style::free_random;
    std::uint64_t seed = 0;
};

ChainComplex gen_complex(const GenProfile& profile);

struct SuiteFailure {
    int case_index;
    std::string message;
    Json artifact;  // replayable serialized instance data
};

struct SuiteReport {
    std::string suite;
    std::string ring;
    std::uint64_t seed = 0;
    int cases_run = 0;
    int non_vacuous = 0;
    bool expect_counterexample = false;
    int counterexamples_found = 0;
    std::vector<SuiteFailure> failures;
    bool underpowered = false;
    bool passed = false;
};
Json suite_report_to_json(const SuiteReport& r);

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const GenProfile& profile, int cases);
/// The default ring legs of a suite, as run by the command line driver.
std::vector<SuiteReport> run_suite_default_legs(const std::string& name, std::uint64_t seed,
                                                int cases_override = 0);

struct GalleryEntry {
    std::string name;
    std::optional<ChainComplex> complex;  // empty for the documented refusals
    std::string description;
};
GalleryEntry gallery(const std::string& name);
const std::vector<std::string>& gallery_names();

// deterministic random matrices shared by the suites and the tests
Matrix random_matrix(const RingSpec& ring, int rows, int cols, Prng& rng, int bound);
std::pair<Matrix, Matrix> random_invertible(const RingSpec& ring, int n, Prng& rng);

}  // namespace puremin
