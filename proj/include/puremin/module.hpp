#pragma once

#include "puremin/linalg.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace puremin {

/// Finitely presented module R^g / colspan(relations). The relations matrix
/// has exactly g rows, one column per relation. Immutable after construction.
class FPModule {
  public:
    FPModule() : FPModule(RingSpec(), 0, Matrix()) {}
    FPModule(RingSpec ring, int generators, Matrix relations);
    static FPModule free(const RingSpec& ring, int rank);
    static FPModule cyclic(const RingSpec& ring, const RingElem& d);  // R/(d)
    static FPModule zero(const RingSpec& ring) { return free(ring, 0); }

    const RingSpec& ring() const { return ring_; }
    int generators() const { return generators_; }
    const Matrix& relations() const { return relations_; }

    /// Elementary-divisor classification: M is isomorphic to
    /// (+) R/(d_i) (+) R^free_rank with the d_i nonzero non-units.
    struct CanonicalForm {
        std::vector<RingElem> divisors;
        int free_rank = 0;
        /// Generator change to the diagonal presentation and its inverse.
        Matrix to_diagonal, from_diagonal;
        /// Full diagonal of the relation Smith form (units and zeros included).
        std::vector<RingElem> full_diagonal;

        bool same_class(const CanonicalForm& o) const {
            return divisors == o.divisors && free_rank == o.free_rank;
        }
    };
    const CanonicalForm& canonical_form() const;

    bool is_zero_module() const;
    bool is_isomorphic_to(const FPModule& o) const;

    struct Flags {
        bool is_free, is_projective, is_flat, is_injective_over_self;
    };
    Flags classify() const;

    /// Number of elements when the underlying set is finite.
    std::optional<Int> element_count() const;

  private:
    RingSpec ring_;
    int generators_;
    Matrix relations_;
    mutable std::shared_ptr<const CanonicalForm> canonical_;  // lazily computed
};

/// Homomorphism between finitely presented modules, stored as its action on
/// generators. Construction certifies well-definedness: action * (source
/// relations) must land in the column span of the target relations.
class ModuleHom {
  public:
    ModuleHom(FPModule source, FPModule target, Matrix action);
    static ModuleHom zero(const FPModule& source, const FPModule& target);
    static ModuleHom identity(const FPModule& m);

    const FPModule& source() const { return source_; }
    const FPModule& target() const { return target_; }
    const Matrix& action() const { return action_; }

    ModuleHom compose(const ModuleHom& inner) const;  // *this after inner
    ModuleHom operator+(const ModuleHom& o) const;
    ModuleHom operator-(const ModuleHom& o) const;
    ModuleHom negated() const;

    bool is_zero_hom() const;
    bool equals(const ModuleHom& o) const;  // as maps, not as matrices
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const;
    std::optional<ModuleHom> inverse() const;

  private:
    FPModule source_;
    FPModule target_;
    Matrix action_;
};

/// Kernel, image and cokernel with their structure maps.
struct KernelImageCokernel {
    FPModule kernel;
    ModuleHom kernel_inclusion;   // kernel -> source
    FPModule image;
    ModuleHom image_inclusion;    // image -> target
    ModuleHom image_projection;   // source ->> image
    FPModule cokernel;
    ModuleHom cokernel_projection;  // target ->> cokernel
};
KernelImageCokernel kic(const ModuleHom& f);

/// Presentation of the subquotient (im num + im rel)/(im den + im rel) of the
/// ambient module; generators are the columns of `num`.
FPModule subquotient_module(const FPModule& ambient, const Matrix& num, const Matrix& den);

FPModule tensor_modules(const FPModule& m, const FPModule& n);
/// Functorial action on the tensor presentations (generator (i,j) at i*b + j).
ModuleHom tensor_homs(const ModuleHom& f, const ModuleHom& g);

struct HomModule {
    FPModule module;                       // Hom(M, N) as an FPModule
    std::vector<Matrix> generator_actions; // one target x source action per generator
    FPModule hom_source, hom_target;
};
HomModule hom_modules(const FPModule& m, const FPModule& n);
/// Coordinates of a well-defined action matrix in the Hom generator basis.
Matrix hom_coordinates(const HomModule& h, const Matrix& action);
/// The action matrix represented by a coordinate column.
Matrix hom_action_from_coordinates(const HomModule& h, const Matrix& coords);

/// Pontryagin-style dual of a finite module, realized as Hom into R for
/// residue rings and Hom into R/(exponent) over the domains.
struct DualModule {
    FPModule dual;
    HomModule hom_data;
    RingElem dualizer;  // d with dualizing object R/(d); zero means R itself
};
DualModule character_dual(const FPModule& m);
DualModule character_dual(const FPModule& m, const RingElem& dualizer);
/// Contravariant functorial action: Hom(target-dual) -> Hom(source-dual).
ModuleHom dual_hom(const ModuleHom& f, const DualModule& dual_of_target,
                   const DualModule& dual_of_source);

/// Short exact sequence 0 -> L -> M -> N -> 0 of modules.
struct SESModules {
    ModuleHom inj;   // L -> M
    ModuleHom surj;  // M -> N
};
/// Throws unless inj is injective, surj surjective, im(inj) == ker(surj).
void validate_ses(const SESModules& s);

struct PurityCertificate {
    bool pure;
    std::optional<Matrix> retraction;      // rho with rho * inj == id on L
    std::optional<RingElem> failing_cyclic;  // d: tensoring with R/(d) kills exactness
};
/// Purity of a short exact sequence. Over the supported rings (noetherian,
/// all modules finitely presented) pure is equivalent to split, so the
/// decision is a retraction solve; on failure a cyclic tensor witness is
/// attached.
PurityCertificate is_pure_ses(const SESModules& s);

/// All elements of a finite module as generator-coordinate columns.
std::vector<Matrix> enumerate_elements(const FPModule& m);
/// All homomorphisms M -> N (finite hom-sets only), as action matrices.
std::vector<Matrix> enumerate_homs(const FPModule& m, const FPModule& n);
/// Size of Hom(M, N) when finite, without materializing it.
std::optional<Int> hom_count(const FPModule& m, const FPModule& n);

}  // namespace puremin
