#pragma once

#include "puremin/module.hpp"

#include <map>
#include <string>
#include <vector>

namespace puremin {

/// Direct sum with the four structure matrices (generator coordinates).
struct ModuleSum {
    FPModule sum;
    Matrix incl_left, incl_right;  // part -> sum
    Matrix proj_left, proj_right;  // sum -> part
};
ModuleSum direct_sum_modules(const FPModule& a, const FPModule& b);

struct ModuleMultiSum {
    FPModule sum;
    std::vector<Matrix> incls, projs;
};
ModuleMultiSum direct_sum_many(const RingSpec& ring, const std::vector<FPModule>& parts);

/// A chain complex of finitely presented modules, either bounded (modules in
/// a degree window, zero outside) or periodic (modules indexed by residues
/// mod q, extended q-periodically in both directions). The differential at
/// degree i maps M_i to M_{i-1}.
class ChainComplex {
  public:
    enum class Shape { bounded, periodic };

    static ChainComplex bounded(RingSpec ring, int min_degree, std::vector<FPModule> modules,
                                std::vector<Matrix> differentials);
    static ChainComplex periodic(RingSpec ring, std::vector<FPModule> modules,
                                 std::vector<Matrix> differentials);
    static ChainComplex zero_bounded(const RingSpec& ring);
    static ChainComplex zero_periodic(const RingSpec& ring, int period);

    const RingSpec& ring() const { return ring_; }
    Shape shape() const { return shape_; }
    bool is_periodic() const { return shape_ == Shape::periodic; }
    int period() const { return static_cast<int>(modules_.size()); }
    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(modules_.size()) - 1; }

    /// Representative degrees: the window for bounded, residues 0..q-1 else.
    std::vector<int> degrees() const;

    const FPModule& module_at(int degree) const;
    /// Action matrix of d_degree : M_degree -> M_{degree-1} (zero outside).
    Matrix differential_at(int degree) const;

    bool is_zero_complex() const;
    /// Bounded only: shrink the window to the nonzero support.
    ChainComplex trimmed() const;
    /// Degree shift: result at degree i+by is the old degree i; differentials
    /// pick up the sign (-1)^by.
    ChainComplex shifted(int by) const;

    std::string describe() const;

  private:
    ChainComplex() = default;
    int index_of(int degree) const;  // -1 when the module there is zero

    RingSpec ring_;
    Shape shape_ = Shape::bounded;
    int min_degree_ = 0;  // bounded only
    std::vector<FPModule> modules_;
    std::vector<Matrix> diffs_;  // bounded: diffs_[k]: modules_[k+1] -> modules_[k];
                                 // periodic: diffs_[r]: M_r -> M_{r-1 mod q}
    FPModule zero_module_;
};

struct ComplexDefect {
    int degree;
    std::string what;
};
/// All invariant violations; empty result certifies validity.
std::vector<ComplexDefect> validate_complex(const ChainComplex& c);
void require_valid(const ChainComplex& c);

// --- subquotients ---
enum class SubquotientKind { cycles, boundaries, cokernels, homology };
struct SubquotientData {
    FPModule module;
    /// Columns in M_degree generator coordinates spanning the subobject
    /// (cycles, boundaries, homology); identity for cokernels.
    Matrix generators;
};
SubquotientData subquotient_at(const ChainComplex& c, SubquotientKind kind, int degree);
FPModule homology_at(const ChainComplex& c, int degree);
bool is_acyclic(const ChainComplex& c);

/// Cycle inclusion SES 0 -> Z_i -> M_i -> Z_{i-1} -> 0 (requires acyclicity
/// at degree i-1 for exactness of the right-hand end).
SESModules cycle_ses(const ChainComplex& c, int degree);
bool is_pure_acyclic(const ChainComplex& c);

/// Morphism of complexes (degree shift 0) with certified commuting squares.
class ChainMap {
  public:
    ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components);
    static ChainMap zero(ChainComplex source, ChainComplex target);
    static ChainMap identity(const ChainComplex& c);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    Matrix component_at(int degree) const;

    ChainMap compose(const ChainMap& inner) const;
    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-(const ChainMap& o) const;

    bool is_zero_map() const;

  private:
    ChainComplex source_, target_;
    std::map<int, Matrix> components_;
};

/// Degree +1 homotopy data sigma_i : M_i -> N_{i+1}.
struct Homotopy {
    std::map<int, Matrix> components;
    Matrix component_at(const ChainComplex& source, const ChainComplex& target,
                        int degree) const;
};
/// Certifies f - g == d sigma + sigma d degreewise.
bool witnesses_homotopy(const Homotopy& h, const ChainMap& f, const ChainMap& g);

ChainComplex mapping_cone(const ChainMap& f);

ChainComplex direct_sum_complexes(const ChainComplex& a, const ChainComplex& b);

/// A module placed in a single degree.
ChainComplex one_term_complex(const FPModule& m, int degree = 0);

bool is_contractible(const ChainComplex& c, Homotopy* witness = nullptr);

struct MapFlags {
    bool is_qis, is_pure_qis, is_homotopy_equiv, is_iso;
};
MapFlags classify_map(const ChainMap& f);

struct SESComplexes {
    ChainMap inj;   // L -> M
    ChainMap surj;  // M -> N
};
void validate_ses(const SESComplexes& s);
SESComplexes cone_canonical_ses(const ChainMap& f, const ChainComplex& cone);

struct SESFlags {
    bool degreewise_split, degreewise_pure, complex_split, complex_pure;
};
SESFlags classify_ses(const SESComplexes& s);

/// Degreewise module SES at one degree of a complex SES.
SESModules ses_at_degree(const SESComplexes& s, int degree);

// --- total complexes and duals (bounded complexes only) ---
ChainComplex total_hom_complex(const ChainComplex& m, const ChainComplex& n);
ChainComplex total_tensor_complex(const ChainComplex& l, const ChainComplex& m);
/// Degreewise character dual with a shared dualizing object; contravariant,
/// so degree i of the result is the dual of degree -i.
ChainComplex character_dual_complex(const ChainComplex& c);

}  // namespace puremin
