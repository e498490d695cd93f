#pragma once

#include "puremin/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace puremin {

enum class TriBool { yes, no, unknown };
std::string to_string(TriBool t);

/// One elimination step: basis changes at a degree pair followed by the
/// removal of generator pairs sitting on unit pivots. Replayable.
struct ReductionMove {
    int degree;              // pivots connect this degree to degree - 1
    std::string component;   // CRT component tag over residue rings, else ""
    Matrix source_change, source_change_inv;  // applied at `degree`
    Matrix target_change, target_change_inv;  // applied at `degree - 1`
    std::vector<std::pair<int, int>> pivots;  // (target row, source col), post-change
};

struct ReductionTrace {
    std::vector<ReductionMove> moves;
    ChainComplex split_part;  // contractible direct sum of eliminated disks
    ChainComplex reduced;     // no unit elementary divisor left in any differential
    /// Degreewise isomorphisms original <-> split_part (+) reduced (keyed the
    /// same way as complex degrees: absolute degree or residue).
    std::map<int, Matrix> iso_to_sum, iso_from_sum;
};

/// Iterated unit-pivot elimination splitting off a maximal contractible
/// direct summand: the input decomposes as split_part (+) reduced. Requires
/// free modules; over residue rings projective modules are first freed
/// through the prime-component splitting.
ReductionTrace reduce_complex(const ChainComplex& c);

/// Re-checks a trace against the original complex: isomorphism data inverts,
/// carries differentials to differentials, the split part is contractible,
/// homology classes agree degreewise, and the reduced part keeps no unit
/// elementary divisor.
bool verify_reduction(const ChainComplex& original, const ReductionTrace& t,
                      std::string* why = nullptr);

struct SearchBudget {
    long long max_cases = 1 << 18;
};

TriBool is_split_minimal(const ChainComplex& c, const SearchBudget& budget = {});
/// Decided as split-minimality: over these rings a finitely generated
/// pure-acyclic pure subcomplex is a contractible split subcomplex.
TriBool is_pure_minimal(const ChainComplex& c, const SearchBudget& budget = {});

struct MinimalityResult {
    TriBool value = TriBool::unknown;
    std::optional<Homotopy> witness;  // for `no`: 1 + d sigma + sigma d is not invertible
    std::string method;
};
MinimalityResult is_minimal(const ChainComplex& c, const SearchBudget& budget = {});

struct DiagnosisReport {
    bool acyclic = false, contractible = false, pure_acyclic = false;
    TriBool split_minimal = TriBool::unknown, pure_minimal = TriBool::unknown;
    TriBool minimal = TriBool::unknown;
    std::optional<Homotopy> minimal_witness;
    std::vector<std::string> notes;
};
DiagnosisReport diagnose(const ChainComplex& c);

struct ResolutionResult {
    ChainComplex resolution;  // bounded complex of free modules
    ChainMap to_input;        // quasi-isomorphism onto the input
    bool complete = false;    // the final kernel vanished before the cutoff
    /// Canonical forms of the successive minimal syzygies (module input).
    std::vector<FPModule> syzygies;
};
/// Free resolution by iterated minimal syzygies; `cutoff` bounds the length.
ResolutionResult free_resolution(const FPModule& m, int cutoff);
/// Resolution of a bounded complex, assembled by iterated mapping cones.
ResolutionResult free_resolution(const ChainComplex& c, int cutoff);

enum class DimensionKind { projective, flat };
struct DimensionResult {
    enum class Status { finite, infinite, exceeds_cutoff, zero_object };
    Status status = Status::finite;
    int value = 0;  // when finite
    std::vector<std::string> notes;
};
DimensionResult dimension(const FPModule& m, DimensionKind kind, int cutoff = 8);
DimensionResult dimension(const ChainComplex& c, DimensionKind kind, int cutoff = 8);

struct ReplacementResult {
    ChainComplex replacement;      // pure-minimal, free modules
    ChainComplex resolution;       // apex of the roof
    ChainMap roof_to_input;        // quasi-isomorphism
    ChainMap roof_to_replacement;  // quasi-isomorphism
};
ReplacementResult pure_minimal_replacement(const FPModule& m, int cutoff = 8);
ReplacementResult pure_minimal_replacement(const ChainComplex& c, int cutoff = 8);

}  // namespace puremin
