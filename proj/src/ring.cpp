#include "puremin/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace puremin {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Int mod_nonneg(const Int& a, const Int& n) {
    Int r = a % n;
    if (r < 0) r += n;
    return r;
}

// extended gcd: returns g and x,y with a*x + b*y == g
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return abs_int(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

Int mod_inverse(const Int& a, const Int& n) {
    Int x, y;
    Int g = ext_gcd(mod_nonneg(a, n), n, x, y);
    if (g != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return mod_nonneg(x, n);
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<Int, int>> factorize(const Int& n) {
    if (n < 1) throw std::invalid_argument("factorize: positive argument required");
    std::vector<std::pair<Int, int>> out;
    Int m = n;
    for (Int d = 2; d * d <= m; d = (d == 2 ? Int(3) : Int(d + 2))) {
        if (m % d == 0) {
            int e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

int valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Int m = abs_int(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

RingSpec RingSpec::integers() {
    RingSpec r;
    r.kind_ = RingKind::integers;
    return r;
}

RingSpec RingSpec::residues(const Int& n) {
    if (n < 2) throw std::invalid_argument("residue ring needs modulus >= 2");
    RingSpec r;
    r.kind_ = RingKind::residues;
    r.n_ = n;
    r.factorization_ = factorize(n);
    return r;
}

RingSpec RingSpec::invert_primes(std::vector<Int> primes) {
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        throw std::invalid_argument("inverted primes must be distinct");
    for (const Int& p : primes)
        if (!is_prime(p)) throw std::invalid_argument("inverted set contains a non-prime");
    RingSpec r;
    r.kind_ = RingKind::invert_primes;
    r.primes_ = std::move(primes);
    return r;
}

RingSpec RingSpec::local_at(const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("localization requires a prime");
    RingSpec r;
    r.kind_ = RingKind::local_at;
    r.p_ = p;
    return r;
}

bool RingSpec::operator==(const RingSpec& o) const {
    return kind_ == o.kind_ && n_ == o.n_ && primes_ == o.primes_ && p_ == o.p_;
}

std::string RingSpec::name() const {
    std::ostringstream s;
    switch (kind_) {
        case RingKind::integers:
            s << "Z";
            break;
        case RingKind::residues:
            s << "Z/" << n_;
            break;
        case RingKind::invert_primes: {
            s << "Z[";
            for (size_t i = 0; i < primes_.size(); ++i)
                s << (i ? "," : "") << "1/" << primes_[i];
            s << "]";
            break;
        }
        case RingKind::local_at:
            s << "Z_(" << p_ << ")";
            break;
    }
    return s.str();
}

bool RingSpec::is_local() const {
    switch (kind_) {
        case RingKind::local_at:
            return true;
        case RingKind::residues:
            return factorization_.size() == 1;
        default:
            return false;
    }
}

bool RingSpec::is_von_neumann_regular() const {
    if (kind_ != RingKind::residues) return false;
    for (const auto& [p, e] : factorization_)
        if (e > 1) return false;
    return true;
}

const std::vector<std::pair<Int, int>>& RingSpec::modulus_factorization() const {
    if (kind_ != RingKind::residues)
        throw std::logic_error("modulus_factorization: not a residue ring");
    return factorization_;
}

RingElem RingSpec::normalize(Int num, Int den) const {
    if (den == 0) throw std::invalid_argument("zero denominator");
    switch (kind_) {
        case RingKind::integers:
            if (num % den != 0) throw std::invalid_argument("not an integer");
            return RingElem{num / den, 1};
        case RingKind::residues: {
            if (num % den != 0) {
                // denominators must be units mod n
                Int d = mod_nonneg(den, n_);
                if (gcd_int(d, n_) != 1)
                    throw std::invalid_argument("denominator not a unit mod n");
                num = num * mod_inverse(d, n_);
                den = 1;
            } else {
                num /= den;
                den = 1;
            }
            return RingElem{mod_nonneg(num, n_), 1};
        }
        case RingKind::invert_primes:
        case RingKind::local_at: {
            if (num == 0) return RingElem{0, 1};
            if (den < 0) {
                num = -num;
                den = -den;
            }
            Int g = gcd_int(num, den);
            num /= g;
            den /= g;
            if (kind_ == RingKind::invert_primes) {
                Int d = den;
                for (const Int& p : primes_)
                    while (d % p == 0) d /= p;
                if (d != 1)
                    throw std::invalid_argument("denominator involves a non-inverted prime");
            } else {
                if (den % p_ == 0)
                    throw std::invalid_argument("denominator not invertible locally at p");
            }
            return RingElem{num, den};
        }
    }
    throw std::logic_error("unreachable");
}

RingElem RingSpec::from_int(const Int& v) const { return normalize(v, 1); }

RingElem RingSpec::from_fraction(const Int& num, const Int& den) const {
    return normalize(num, den);
}

RingElem RingSpec::add(const RingElem& a, const RingElem& b) const {
    return normalize(a.num * b.den + b.num * a.den, a.den * b.den);
}

RingElem RingSpec::sub(const RingElem& a, const RingElem& b) const {
    return normalize(a.num * b.den - b.num * a.den, a.den * b.den);
}

RingElem RingSpec::mul(const RingElem& a, const RingElem& b) const {
    return normalize(a.num * b.num, a.den * b.den);
}

RingElem RingSpec::neg(const RingElem& a) const { return normalize(-a.num, a.den); }

bool RingSpec::is_unit(const RingElem& a) const {
    if (a.num == 0) return false;
    switch (kind_) {
        case RingKind::integers:
            return a.num == 1 || a.num == -1;
        case RingKind::residues:
            return gcd_int(a.num, n_) == 1;
        case RingKind::invert_primes: {
            Int m = abs_int(a.num);
            for (const Int& p : primes_)
                while (m % p == 0) m /= p;
            return m == 1;
        }
        case RingKind::local_at:
            return a.num % p_ != 0;
    }
    return false;
}

RingElem RingSpec::inverse_of_unit(const RingElem& u) const {
    if (!is_unit(u)) throw std::invalid_argument("inverse_of_unit: not a unit");
    if (kind_ == RingKind::residues) return RingElem{mod_inverse(u.num, n_), 1};
    return normalize(u.den, u.num);
}

std::optional<RingElem> RingSpec::try_divide(const RingElem& a, const RingElem& b) const {
    if (b.num == 0) {
        if (a.num == 0) return zero();
        return std::nullopt;
    }
    switch (kind_) {
        case RingKind::integers:
            if (a.num % b.num != 0) return std::nullopt;
            return RingElem{a.num / b.num, 1};
        case RingKind::residues: {
            Int g = gcd_int(b.num, n_);
            if (a.num % g != 0) return std::nullopt;
            Int n1 = n_ / g;
            Int x = mod_nonneg((a.num / g) * mod_inverse(b.num / g, n1), n1);
            return RingElem{x, 1};
        }
        case RingKind::invert_primes:
        case RingKind::local_at: {
            Int num = a.num * b.den;
            Int den = a.den * b.num;
            try {
                return normalize(num, den);
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
        }
    }
    return std::nullopt;
}

RingElem RingSpec::annihilator_gen(const RingElem& a) const {
    if (kind_ == RingKind::residues) {
        if (a.num == 0) return one();
        return RingElem{mod_nonneg(n_ / gcd_int(a.num, n_), n_), 1};
    }
    return a.num == 0 ? one() : zero();
}

RingElem RingSpec::canonical_associate(const RingElem& a) const {
    if (a.num == 0) return zero();
    switch (kind_) {
        case RingKind::integers:
            return RingElem{abs_int(a.num), 1};
        case RingKind::residues:
            return RingElem{mod_nonneg(gcd_int(a.num, n_), n_), 1};
        case RingKind::invert_primes: {
            Int m = abs_int(a.num);
            for (const Int& p : primes_)
                while (m % p == 0) m /= p;
            return RingElem{m, 1};
        }
        case RingKind::local_at: {
            Int q = 1;
            Int m = abs_int(a.num);
            while (m % p_ == 0) {
                m /= p_;
                q *= p_;
            }
            return RingElem{q, 1};
        }
    }
    throw std::logic_error("unreachable");
}

RingElem RingSpec::unit_for_associate(const RingElem& a) const {
    if (a.num == 0) return one();
    if (kind_ == RingKind::residues) {
        // search the coset a/g + k*(n/g) for a residue coprime to n
        Int g = gcd_int(a.num, n_);
        Int step = n_ / g;
        for (Int u = mod_nonneg(a.num / g, n_);; u = mod_nonneg(u + step, n_))
            if (gcd_int(u, n_) == 1) return RingElem{u, 1};
    }
    RingElem assoc = canonical_associate(a);
    auto u = try_divide(a, assoc);
    if (!u || !is_unit(*u)) throw std::logic_error("unit_for_associate: internal error");
    return *u;
}

RingElem RingSpec::gcd(const RingElem& a, const RingElem& b) const {
    if (a.num == 0) return canonical_associate(b);
    if (b.num == 0) return canonical_associate(a);
    RingElem ca = canonical_associate(a);
    RingElem cb = canonical_associate(b);
    switch (kind_) {
        case RingKind::residues:
            return RingElem{mod_nonneg(gcd_int(gcd_int(ca.num, cb.num), n_), n_), 1};
        default:
            return canonical_associate(RingElem{gcd_int(ca.num, cb.num), 1});
    }
}

std::string RingSpec::to_string(const RingElem& a) const {
    std::ostringstream s;
    s << a.num;
    if (a.den != 1) s << "/" << a.den;
    return s.str();
}

}  // namespace puremin
