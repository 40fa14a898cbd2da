#include "quivcon/scalar.hpp"

#include <limits>
#include <ostream>

#include "quivcon/error.hpp"

namespace quivcon {

  namespace {
    std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
      std::uint64_t result = 1 % p;
      base %= p;
      while (exp > 0) {
        if (exp & 1) {
          result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
      }
      return result;
    }

    std::uint64_t inverse_mod(std::uint64_t value, std::uint64_t p) {
      if (value % p == 0) {
        throw Error("division by zero in GF(" + std::to_string(p) + ")");
      }
      return pow_mod(value, p - 2, p);
    }

    std::uint64_t mpz_mod_u(mpz_class const& z, std::uint64_t p) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
      return r.get_ui();
    }

    using i128 = __int128;

    i128 abs128(i128 x) {
      return x < 0 ? -x : x;
    }

    i128 gcd128(i128 a, i128 b) {
      a = abs128(a);
      b = abs128(b);
      while (b != 0) {
        auto t = a % b;
        a      = b;
        b      = t;
      }
      return a;
    }

    std::int64_t gcd64(std::int64_t a, std::int64_t b) {
      a = a < 0 ? -a : a;
      b = b < 0 ? -b : b;
      while (b != 0) {
        auto t = a % b;
        a      = b;
        b      = t;
      }
      return a;
    }

    mpz_class to_mpz(i128 x) {
      bool neg = x < 0;
      auto u   = static_cast<unsigned __int128>(neg ? -x : x);
      mpz_class hi(static_cast<unsigned long>(u >> 64));
      mpz_class lo(static_cast<unsigned long>(u));
      mpz_class z = (hi << 64) + lo;
      return neg ? mpz_class(-z) : z;
    }

    std::uint64_t mod_u(std::int64_t x, std::uint64_t p) {
      auto r = x % static_cast<std::int64_t>(p);
      return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
    }
  }  // namespace

  Scalar::Scalar(mpq_class value) {
    value.canonicalize();
    set_rational(std::move(value));
  }

  void Scalar::set_integer(long long value) {
    if (value == std::numeric_limits<long long>::min()) {
      set_big(mpq_class(mpz_class(std::to_string(value))));
      return;
    }
    num_ = value;
    den_ = 1;
    big_.reset();
  }

  void Scalar::set_big(mpq_class value) {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<mpq_class const>(std::move(value));
  }

  // value is canonical.
  void Scalar::set_rational(mpq_class value) {
    auto const& n = value.get_num();
    auto const& d = value.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n != std::numeric_limits<long>::min()) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
    } else {
      set_big(std::move(value));
    }
  }

  void Scalar::set_fraction(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (den != 1) {
      auto g = gcd128(num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
    }
    if (abs128(num) <= kMax && den <= kMax) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
      return;
    }
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    set_big(std::move(q));
  }

  mpq_class Scalar::rational() const {
    if (big_) {
      return *big_;
    }
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
  }

  Scalar Scalar::modular(std::uint64_t residue, std::uint64_t modulus) {
    Scalar s;
    s.modulus_ = modulus;
    s.residue_ = residue % modulus;
    return s;
  }

  bool Scalar::is_one() const noexcept {
    if (modulus_ == 0) {
      return !big_ && num_ == 1 && den_ == 1;
    }
    return residue_ == 1 % modulus_;
  }

  std::uint64_t Scalar::residue_mod(std::uint64_t p) const {
    if (modulus_ != 0) {
      if (modulus_ != p) {
        throw Error("mixing GF(" + std::to_string(modulus_) + ") and GF("
                    + std::to_string(p) + ") scalars");
      }
      return residue_;
    }
    std::uint64_t num, den;
    if (big_) {
      num = mpz_mod_u(big_->get_num(), p);
      den = mpz_mod_u(big_->get_den(), p);
    } else {
      num = mod_u(num_, p);
      den = mod_u(den_, p);
    }
    if (den == 0) {
      throw Error("rational " + to_string() + " has no image in GF(" + std::to_string(p) + ")");
    }
    return num * inverse_mod(den, p) % p;
  }

  void Scalar::promote(std::uint64_t p) {
    if (modulus_ == 0) {
      residue_ = residue_mod(p);
      modulus_ = p;
      num_     = 0;
      den_     = 1;
      big_.reset();
    }
  }

  std::uint64_t Scalar::common_modulus(Scalar const& other) const {
    if (modulus_ != 0 && other.modulus_ != 0 && modulus_ != other.modulus_) {
      throw Error("mixing scalars from different prime fields");
    }
    return modulus_ != 0 ? modulus_ : other.modulus_;
  }

  void Scalar::add_rational(Scalar const& other, bool negate) {
    if (big_ || other.big_) {
      mpq_class q = negate ? mpq_class(rational() - other.rational()) : mpq_class(rational() + other.rational());
      set_rational(mpq_class(q));
      return;
    }
    if (den_ == 1 && other.den_ == 1) {
      std::int64_t r;
      bool overflow = negate ? __builtin_sub_overflow(num_, other.num_, &r)
                             : __builtin_add_overflow(num_, other.num_, &r);
      if (!overflow && r != std::numeric_limits<std::int64_t>::min()) {
        num_ = r;
        return;
      }
    }
    i128 b = other.num_;
    if (negate) {
      b = -b;
    }
    if (den_ == other.den_) {
      set_fraction(i128(num_) + b, den_);
      return;
    }
    set_fraction(i128(num_) * other.den_ + b * den_, i128(den_) * other.den_);
  }

  void Scalar::multiply_rational(Scalar const& other) {
    if (big_ || other.big_) {
      set_rational(mpq_class(rational() * other.rational()));
      return;
    }
    if (num_ == 0 || other.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    // Cross-cancel first so the product is already reduced.
    auto g1 = gcd64(num_, other.den_);
    auto g2 = gcd64(other.num_, den_);
    i128 n  = i128(num_ / g1) * (other.num_ / g2);
    i128 d  = i128(den_ / g2) * (other.den_ / g1);
    if (abs128(n) <= kMax && d <= kMax) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return;
    }
    set_fraction(n, d);
  }

  Scalar Scalar::inverse() const {
    if (is_zero()) {
      throw Error("inverse of zero");
    }
    if (modulus_ == 0) {
      if (big_) {
        return Scalar(mpq_class(1 / *big_));
      }
      Scalar r;
      r.num_ = num_ < 0 ? -den_ : den_;
      r.den_ = num_ < 0 ? -num_ : num_;
      return r;
    }
    return modular(inverse_mod(residue_, modulus_), modulus_);
  }

  Scalar& Scalar::operator+=(Scalar const& other) {
    std::uint64_t p = common_modulus(other);
    if (p == 0) {
      add_rational(other, false);
      return *this;
    }
    promote(p);
    residue_ = (residue_ + other.residue_mod(p)) % p;
    return *this;
  }

  Scalar& Scalar::operator-=(Scalar const& other) {
    std::uint64_t p = common_modulus(other);
    if (p == 0) {
      add_rational(other, true);
      return *this;
    }
    promote(p);
    residue_ = (residue_ + p - other.residue_mod(p)) % p;
    return *this;
  }

  Scalar& Scalar::operator*=(Scalar const& other) {
    std::uint64_t p = common_modulus(other);
    if (p == 0) {
      multiply_rational(other);
      return *this;
    }
    promote(p);
    residue_ = residue_ * other.residue_mod(p) % p;
    return *this;
  }

  Scalar& Scalar::operator/=(Scalar const& other) {
    if (other.is_zero()) {
      throw Error("division by zero");
    }
    std::uint64_t p = common_modulus(other);
    if (p == 0) {
      multiply_rational(other.inverse());
      return *this;
    }
    promote(p);
    residue_ = residue_ * inverse_mod(other.residue_mod(p), p) % p;
    return *this;
  }

  void Scalar::subtract_product(Scalar const& a, Scalar const& b) {
    if (a.is_zero() || b.is_zero()) {
      return;
    }
    *this -= a * b;
  }

  void Scalar::add_product(Scalar const& a, Scalar const& b) {
    if (a.is_zero() || b.is_zero()) {
      return;
    }
    *this += a * b;
  }

  Scalar Scalar::operator-() const {
    if (modulus_ == 0) {
      if (big_) {
        return Scalar(mpq_class(-*big_));
      }
      Scalar r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return modular(residue_ == 0 ? 0 : modulus_ - residue_, modulus_);
  }

  bool operator==(Scalar const& a, Scalar const& b) {
    std::uint64_t p = a.common_modulus(b);
    if (p == 0) {
      if (a.big_ || b.big_) {
        return a.big_ && b.big_ && *a.big_ == *b.big_;
      }
      return a.num_ == b.num_ && a.den_ == b.den_;
    }
    return a.residue_mod(p) == b.residue_mod(p);
  }

  std::string Scalar::to_string() const {
    if (modulus_ != 0) {
      return std::to_string(residue_);
    }
    if (big_) {
      return big_->get_str();
    }
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  std::ostream& operator<<(std::ostream& os, Scalar const& s) {
    return os << s.to_string();
  }

  Field Field::prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) {
      throw Error("prime field modulus must lie in [2, 2^31)");
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw Error(std::to_string(p) + " is not prime");
      }
    }
    return Field(p);
  }

  Scalar Field::from_rational(mpq_class const& q) const {
    Scalar s(q);
    if (p_ == 0) {
      return s;
    }
    return Scalar::modular(0, p_) + s;
  }

  Scalar Field::from_integer(long value) const {
    return from_rational(mpq_class(value));
  }

  Scalar Field::parse(std::string_view text) const {
    std::string str(text);
    auto        trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    str = trim(str);
    auto valid_int = [](std::string const& s) {
      if (s.empty()) {
        return false;
      }
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) {
        return false;
      }
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
          return false;
        }
      }
      return true;
    };
    auto        slash = str.find('/');
    std::string num   = trim(str.substr(0, slash));
    std::string den   = slash == std::string::npos ? "1" : trim(str.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den)) {
      throw Error("malformed rational \"" + std::string(text) + "\"");
    }
    if (num[0] == '+') {
      num.erase(0, 1);
    }
    if (den[0] == '+') {
      den.erase(0, 1);
    }
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) {
      throw Error("zero denominator in \"" + std::string(text) + "\"");
    }
    return from_rational(mpq_class(n, d));
  }

  Scalar Field::coerce(Scalar const& s) const {
    if (p_ == 0) {
      if (!s.is_rational()) {
        throw Error("cannot coerce a GF(p) scalar into the rationals");
      }
      return s;
    }
    return Scalar::modular(0, p_) + s;
  }

  std::string Field::name() const {
    return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")";
  }

}  // namespace quivcon
