#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace puremin {

using Int = boost::multiprecision::cpp_int;

/// A ring element in canonical form. Interpretation depends on the ring:
/// integers and residue rings use `num` only (den == 1); the two localization
/// kinds store a reduced fraction num/den with den > 0.
struct RingElem {
    Int num{0};
    Int den{1};

    friend bool operator==(const RingElem& a, const RingElem& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }
};

enum class RingKind {
    integers,       // Z
    residues,       // Z/n, n >= 2
    invert_primes,  // Z[1/p : p in S], S a finite set of primes
    local_at,       // Z localized at the prime ideal (p)
};

/// One of the four supported coefficient rings. All are commutative and
/// noetherian, and all admit Smith normal forms; element arithmetic keeps a
/// unique canonical representation so equality is representation equality.
class RingSpec {
  public:
    static RingSpec integers();
    static RingSpec residues(const Int& n);
    static RingSpec invert_primes(std::vector<Int> primes);
    static RingSpec local_at(const Int& p);

    RingKind kind() const { return kind_; }
    const Int& modulus() const { return n_; }                 // residues
    const std::vector<Int>& inverted_primes() const { return primes_; }
    const Int& local_prime() const { return p_; }             // local_at

    bool operator==(const RingSpec& o) const;
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

    std::string name() const;

    bool is_domain() const { return kind_ != RingKind::residues; }
    bool is_finite() const { return kind_ == RingKind::residues; }
    /// Local in the commutative-algebra sense (unique maximal ideal).
    bool is_local() const;
    /// Z/n is von Neumann regular exactly when n is squarefree.
    bool is_von_neumann_regular() const;
    /// Prime factorization of the modulus (residue rings only).
    const std::vector<std::pair<Int, int>>& modulus_factorization() const;

    // --- element construction ---
    RingElem zero() const { return RingElem{0, 1}; }
    RingElem one() const { return RingElem{1, 1}; }
    RingElem from_int(const Int& v) const;
    RingElem from_int(long long v) const { return from_int(Int(v)); }
    /// Fraction constructor; throws if num/den has no representative here.
    RingElem from_fraction(const Int& num, const Int& den) const;

    // --- total canonical-form arithmetic ---
    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem mul(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;

    bool is_zero(const RingElem& a) const { return a.num == 0; }
    bool is_unit(const RingElem& a) const;
    RingElem inverse_of_unit(const RingElem& u) const;

    /// Some x with b*x == a, if one exists.
    std::optional<RingElem> try_divide(const RingElem& a, const RingElem& b) const;
    /// Canonical generator of the annihilator ideal {x : a*x == 0}.
    RingElem annihilator_gen(const RingElem& a) const;
    /// The canonical associate: nonnegative for Z, gcd with n for Z/n, the
    /// integer part with inverted primes stripped for the localizations.
    RingElem canonical_associate(const RingElem& a) const;
    /// Unit u with a == u * canonical_associate(a). (u := 1 when a == 0.)
    RingElem unit_for_associate(const RingElem& a) const;
    /// Canonical generator of the ideal (a, b).
    RingElem gcd(const RingElem& a, const RingElem& b) const;
    bool divides(const RingElem& a, const RingElem& b) const {
        return try_divide(b, a).has_value();
    }

    std::string to_string(const RingElem& a) const;

    RingSpec() = default;  // the integers

  private:
    RingElem normalize(Int num, Int den) const;

    RingKind kind_{RingKind::integers};
    Int n_{0};
    std::vector<Int> primes_;
    Int p_{0};
    std::vector<std::pair<Int, int>> factorization_;  // of n_, residues only
};

// small number-theory helpers shared across the library
bool is_prime(const Int& n);
std::vector<std::pair<Int, int>> factorize(const Int& n);
int valuation(const Int& n, const Int& p);

}  // namespace puremin
