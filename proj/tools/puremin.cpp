#include "puremin/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace puremin;

namespace {

// exit codes: 0 success/pass, 1 suite failure or refused gallery stub,
// 2 invalid input, 3 unknown or unsupported request
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;
constexpr int kUnknown = 3;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path + ": malformed JSON: " + e.what());
    }
}

ChainComplex load_complex(const std::string& path) {
    try {
        return complex_from_json(load_json(path));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string canonical_form_string(const FPModule& m) {
    const auto& cf = m.canonical_form();
    const RingSpec& R = m.ring();
    std::ostringstream s;
    bool first = true;
    for (const RingElem& d : cf.divisors) {
        s << (first ? "" : " + ") << "R/(" << R.to_string(d) << ")";
        first = false;
    }
    if (cf.free_rank > 0) {
        s << (first ? "" : " + ") << "R";
        if (cf.free_rank > 1) s << "^" << cf.free_rank;
        first = false;
    }
    if (first) s << "0";
    return s.str();
}

Json canonical_form_json(const FPModule& m) {
    Json j;
    Json divisors = Json::array();
    for (const RingElem& d : m.canonical_form().divisors)
        divisors.push_back(m.ring().to_string(d));
    j["divisors"] = divisors;
    j["free_rank"] = m.canonical_form().free_rank;
    return j;
}

int cmd_validate(const std::string& path, bool as_json) {
    ChainComplex c = load_complex(path);
    auto defects = validate_complex(c);
    if (as_json) {
        Json j;
        j["valid"] = defects.empty();
        Json list = Json::array();
        for (const auto& d : defects) {
            Json e;
            e["degree"] = d.degree;
            e["what"] = d.what;
            list.push_back(e);
        }
        j["defects"] = list;
        std::cout << j.dump(2) << "\n";
    } else if (defects.empty()) {
        std::cout << "valid: " << c.describe() << "\n";
    } else {
        for (const auto& d : defects)
            std::cout << "invalid at degree " << d.degree << ": " << d.what << "\n";
    }
    return defects.empty() ? kOk : kBadInput;
}

int cmd_homology(const std::string& path, bool as_json) {
    ChainComplex c = load_complex(path);
    require_valid(c);
    if (as_json) {
        Json j = Json::object();
        for (int d : c.degrees()) j[std::to_string(d)] = canonical_form_json(homology_at(c, d));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << c.describe() << "\n";
        for (int d : c.degrees())
            std::cout << "H_" << d << " = " << canonical_form_string(homology_at(c, d)) << "\n";
    }
    return kOk;
}

int cmd_diagnose(const std::string& path, bool as_json) {
    ChainComplex c = load_complex(path);
    DiagnosisReport r = diagnose(c);
    if (as_json) {
        std::cout << diagnosis_to_json(r).dump(2) << "\n";
    } else {
        std::cout << c.describe() << "\n";
        std::cout << "acyclic=" << (r.acyclic ? "true" : "false")
                  << " pure_acyclic=" << (r.pure_acyclic ? "true" : "false")
                  << " contractible=" << (r.contractible ? "true" : "false") << "\n";
        std::cout << "split_minimal=" << to_string(r.split_minimal)
                  << " pure_minimal=" << to_string(r.pure_minimal)
                  << " minimal=" << to_string(r.minimal) << "\n";
        if (r.minimal_witness) {
            std::cout << "witness homotopy:";
            for (const auto& [deg, m] : r.minimal_witness->components)
                std::cout << " sigma_" << deg << " = " << m.to_string();
            std::cout << "\n";
        }
        for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
    }
    return kOk;
}

int cmd_reduce(const std::string& path, const std::string& trace_path, bool as_json) {
    ChainComplex c = load_complex(path);
    ReductionTrace t = reduce_complex(c);
    std::string why;
    if (!verify_reduction(c, t, &why))
        throw std::logic_error("reduction verification failed: " + why);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::invalid_argument(trace_path + ": cannot write trace");
        out << trace_to_json(t).dump(2) << "\n";
    }
    if (as_json) {
        Json j;
        j["moves"] = static_cast<int>(t.moves.size());
        j["reduced"] = complex_to_json(t.reduced.trimmed());
        j["split_rank"] = [&] {
            int total = 0;
            for (int d : t.split_part.degrees()) total += t.split_part.module_at(d).generators();
            return total;
        }();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "moves: " << t.moves.size() << "\n";
        ChainComplex red = t.reduced.trimmed();
        if (red.is_zero_complex()) {
            std::cout << "reduced complex is zero\n";
        } else {
            std::cout << "reduced: " << red.describe() << "\n";
            for (int d : red.degrees())
                std::cout << "  degree " << d << ": "
                          << canonical_form_string(red.module_at(d)) << "\n";
        }
    }
    return kOk;
}

int cmd_dimension(const std::string& path, const std::string& kind, int cutoff, bool as_json) {
    ChainComplex c = load_complex(path);
    DimensionKind k = kind == "fd" ? DimensionKind::flat : DimensionKind::projective;
    DimensionResult r = [&] {
        // single-module complexes in degree zero are dimensioned as modules
        if (!c.is_periodic() && c.degrees().size() == 1 && c.min_degree() == 0)
            return dimension(c.module_at(0), k, cutoff);
        return dimension(c, k, cutoff);
    }();
    if (as_json) {
        std::cout << dimension_to_json(r).dump(2) << "\n";
    } else {
        switch (r.status) {
            case DimensionResult::Status::finite:
                std::cout << kind << " = " << r.value << "\n";
                break;
            case DimensionResult::Status::infinite:
                std::cout << kind << " = infinite\n";
                break;
            case DimensionResult::Status::exceeds_cutoff:
                std::cout << kind << " exceeds the cutoff " << cutoff << "\n";
                break;
            case DimensionResult::Status::zero_object:
                std::cout << kind << ": zero object (vanishes in the derived category)\n";
                break;
        }
        for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
    }
    return kOk;
}

int cmd_harness(const std::string& suite, std::uint64_t seed, int cases, bool as_json) {
    std::vector<std::string> todo;
    if (suite == "all")
        todo = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), suite) !=
             suite_names().end())
        todo = {suite};
    else {
        std::cerr << "unknown suite \"" << suite << "\"\n";
        return kUnknown;
    }
    bool all_passed = true;
    Json out = Json::array();
    for (const std::string& name : todo) {
        std::vector<SuiteReport> legs = run_suite_default_legs(name, seed, cases);
        int non_vacuous = 0;
        bool legs_passed = true;
        for (const SuiteReport& leg : legs) {
            non_vacuous += leg.non_vacuous;
            legs_passed = legs_passed && leg.passed;
            if (as_json) out.push_back(suite_report_to_json(leg));
        }
        bool suite_passed = legs_passed && non_vacuous >= 30;
        all_passed = all_passed && suite_passed;
        if (!as_json) {
            std::cout << (suite_passed ? "PASS" : "FAIL") << " " << name
                      << " (non-vacuous " << non_vacuous << ")";
            for (const SuiteReport& leg : legs) {
                std::cout << " [" << leg.ring << ": " << leg.cases_run << " cases";
                if (leg.expect_counterexample)
                    std::cout << ", " << leg.counterexamples_found << " counterexamples";
                if (!leg.failures.empty())
                    std::cout << ", " << leg.failures.size() << " failures";
                std::cout << "]";
            }
            std::cout << "\n";
            for (const SuiteReport& leg : legs)
                for (const SuiteFailure& f : leg.failures)
                    std::cout << "  failure in " << leg.ring << " case " << f.case_index
                              << ": " << f.message << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return all_passed ? kOk : kFail;
}

int cmd_example(const std::string& name, const std::string& emit, bool as_json) {
    GalleryEntry entry = [&] {
        try {
            return gallery(name);
        } catch (const std::invalid_argument&) {
            throw std::domain_error("unknown example \"" + name + "\"");
        }
    }();
    if (!entry.complex) {
        if (as_json) {
            Json j;
            j["name"] = entry.name;
            j["available"] = false;
            j["description"] = entry.description;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "refused: " << entry.description << "\n";
        }
        return kFail;
    }
    Json j = complex_to_json(*entry.complex);
    if (!emit.empty()) {
        std::ofstream out(emit);
        if (!out) throw std::invalid_argument(emit + ": cannot write");
        out << j.dump(2) << "\n";
        if (!as_json) std::cout << "wrote " << emit << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pure-minimality toolkit for chain complexes of finitely presented modules"};
    app.require_subcommand(1);

    std::string input, trace_path, kind = "pd", suite = "all", example_name, emit_path;
    bool as_json = false;
    int cutoff = 8, cases = 0;
    std::uint64_t seed = 1;

    auto* validate = app.add_subcommand("validate", "check the complex invariants");
    validate->add_option("input", input)->required();
    validate->add_flag("--json", as_json);

    auto* homology = app.add_subcommand("homology", "canonical forms of the homology");
    homology->add_option("input", input)->required();
    homology->add_flag("--json", as_json);

    auto* diagnose_cmd = app.add_subcommand("diagnose", "acyclicity, purity and minimality flags");
    diagnose_cmd->add_option("input", input)->required();
    diagnose_cmd->add_flag("--json", as_json);

    auto* reduce_cmd = app.add_subcommand("reduce", "split off the contractible summand");
    reduce_cmd->add_option("input", input)->required();
    reduce_cmd->add_option("--trace", trace_path, "write the full reduction trace");
    reduce_cmd->add_flag("--json", as_json);

    auto* dim = app.add_subcommand("dimension", "projective or flat dimension");
    dim->add_option("input", input)->required();
    dim->add_option("--kind", kind)->check(CLI::IsMember({"pd", "fd"}));
    dim->add_option("--cutoff", cutoff)->check(CLI::PositiveNumber);
    dim->add_flag("--json", as_json);

    auto* harness = app.add_subcommand("harness", "run the property suites");
    harness->add_option("--suite", suite, "suite name or 'all'");
    harness->add_option("--seed", seed, "64-bit decimal seed");
    harness->add_option("--cases", cases, "override the per-leg case count");
    harness->add_flag("--json", as_json);

    auto* example = app.add_subcommand("example", "emit a built-in complex");
    example->add_option("name", example_name)->required();
    example->add_option("--emit", emit_path, "write the JSON to a file");
    example->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUnknown;
    }

    try {
        if (validate->parsed()) return cmd_validate(input, as_json);
        if (homology->parsed()) return cmd_homology(input, as_json);
        if (diagnose_cmd->parsed()) return cmd_diagnose(input, as_json);
        if (reduce_cmd->parsed()) return cmd_reduce(input, trace_path, as_json);
        if (dim->parsed()) return cmd_dimension(input, kind, cutoff, as_json);
        if (harness->parsed()) return cmd_harness(suite, seed, cases, as_json);
        if (example->parsed()) return cmd_example(example_name, emit_path, as_json);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnknown;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kBadInput;
    }
    return kUnknown;
}
