#ifndef QUIVCON_SCALAR_HPP_
#define QUIVCON_SCALAR_HPP_

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace quivcon {

  // An element of the ground field: either an arbitrary-precision rational
  // or a residue modulo a prime p < 2^31.
  //
  // Rationals act as field-agnostic literals: combining a rational with a
  // residue mod p first maps the rational into GF(p). This keeps `Scalar(0)`
  // and `Scalar(1)` valid zero and unit elements for every field, so no
  // operation needs a field context except parsing and root finding.
  //
  // Rationals whose numerator and denominator fit in 63 bits are stored
  // inline; larger ones share an immutable mpq. The inline form is used
  // whenever it can hold the value, so equal rationals have equal forms.
  class Scalar {
   public:
    Scalar() = default;

    template <std::signed_integral T>
    Scalar(T value) {  // NOLINT
      set_integer(static_cast<long long>(value));
    }

    template <std::unsigned_integral T>
    Scalar(T value) {  // NOLINT
      if (static_cast<unsigned long long>(value) <= static_cast<unsigned long long>(kMax)) {
        num_ = static_cast<std::int64_t>(value);
      } else {
        set_big(mpq_class(mpz_class(static_cast<unsigned long>(value))));
      }
    }

    explicit Scalar(mpq_class value);

    static Scalar modular(std::uint64_t residue, std::uint64_t modulus);

    // 0 for rationals.
    std::uint64_t modulus() const noexcept {
      return modulus_;
    }
    bool is_rational() const noexcept {
      return modulus_ == 0;
    }
    mpq_class rational() const;
    std::uint64_t residue() const noexcept {
      return residue_;
    }

    bool is_zero() const noexcept {
      return modulus_ == 0 ? !big_ && num_ == 0 : residue_ == 0;
    }
    bool is_one() const noexcept;

    Scalar inverse() const;

    Scalar& operator+=(Scalar const& other);
    Scalar& operator-=(Scalar const& other);
    Scalar& operator*=(Scalar const& other);
    Scalar& operator/=(Scalar const& other);

    // *this -= a * b without allocating a temporary.
    void subtract_product(Scalar const& a, Scalar const& b);
    // *this += a * b without allocating a temporary.
    void add_product(Scalar const& a, Scalar const& b);

    Scalar operator-() const;

    friend Scalar operator+(Scalar a, Scalar const& b) {
      return a += b;
    }
    friend Scalar operator-(Scalar a, Scalar const& b) {
      return a -= b;
    }
    friend Scalar operator*(Scalar a, Scalar const& b) {
      return a *= b;
    }
    friend Scalar operator/(Scalar a, Scalar const& b) {
      return a /= b;
    }

    friend bool operator==(Scalar const& a, Scalar const& b);

    // "p/q" (or "p" when q = 1) for rationals, the residue for GF(p).
    std::string to_string() const;

   private:
    static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

    void          set_integer(long long value);
    void          set_big(mpq_class value);
    void          set_rational(mpq_class value);
    // From a reduced-or-not fraction with 128-bit parts, den != 0.
    void          set_fraction(__int128 num, __int128 den);
    void          promote(std::uint64_t modulus);
    std::uint64_t residue_mod(std::uint64_t modulus) const;
    std::uint64_t common_modulus(Scalar const& other) const;
    void          add_rational(Scalar const& other, bool negate);
    void          multiply_rational(Scalar const& other);

    std::int64_t                     num_ = 0;
    std::int64_t                     den_ = 1;  // > 0, coprime to num_
    std::shared_ptr<mpq_class const> big_;      // only when the inline form overflows
    std::uint64_t                    residue_ = 0;
    std::uint64_t                    modulus_ = 0;
  };

  std::ostream& operator<<(std::ostream& os, Scalar const& s);

  // The field a session works over: the rationals, or GF(p).
  class Field {
   public:
    Field() = default;

    static Field rationals() {
      return Field();
    }
    // Throws Error unless p is a prime below 2^31.
    static Field prime(std::uint64_t p);

    std::uint64_t characteristic() const noexcept {
      return p_;
    }
    bool is_rational() const noexcept {
      return p_ == 0;
    }

    // Maps a rational into the field. Throws if the denominator vanishes.
    Scalar from_rational(mpq_class const& q) const;
    Scalar from_integer(long value) const;
    // Accepts "n", "-n" and "n/d". Throws Error on malformed text or d = 0.
    Scalar parse(std::string_view text) const;
    // Brings an arbitrary scalar into this field.
    Scalar coerce(Scalar const& s) const;

    std::string name() const;

    friend bool operator==(Field const&, Field const&) = default;

   private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_ = 0;
  };

}  // namespace quivcon

#endif  // QUIVCON_SCALAR_HPP_
