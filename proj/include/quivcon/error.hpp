#ifndef QUIVCON_ERROR_HPP_
#define QUIVCON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace quivcon {

  // Raised for malformed input or violated preconditions. Semantic check
  // failures (a non-associative table, a singular U block, ...) are returned
  // as values instead.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // The requested computation is not available over the active field.
  class UnsupportedField : public Error {
   public:
    using Error::Error;
  };

  // The algebra is not basic and split over the active field.
  class NotBasic : public Error {
   public:
    using Error::Error;
  };

  // Outcome of a validation routine. `message` names the first violation.
  struct Verdict {
    bool        ok = true;
    std::string message;

    static Verdict pass() {
      return {};
    }
    static Verdict fail(std::string why) {
      return {false, std::move(why)};
    }
    explicit operator bool() const noexcept {
      return ok;
    }
  };

}  // namespace quivcon

#endif  // QUIVCON_ERROR_HPP_
