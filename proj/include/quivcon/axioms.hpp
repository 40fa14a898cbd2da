#ifndef QUIVCON_AXIOMS_HPP_
#define QUIVCON_AXIOMS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quivcon/generators.hpp"
#include "quivcon/io.hpp"

namespace quivcon {

  // Deliberate corruption used as a negative control for the suite itself.
  enum class Fault { none, mu, interchange };
  // "none", "mu", "interchange"; throws Error otherwise.
  Fault parse_fault(std::string const& name);

  struct Trial {
    Verdict verdict;
    Json    instance;  // everything needed to replay the check by hand
  };

  struct Property {
    std::string                                                     name;
    std::function<Trial(Rng&, GeneratorBounds const&, Fault)>        run;
  };
  std::vector<Property> const& axiom_properties();

  struct AxiomConfig {
    std::uint64_t   seed  = 20261016;
    std::size_t     count = 100;
    GeneratorBounds bounds;
    Fault           fault = Fault::none;
    // Empty means all properties.
    std::vector<std::string> only;
  };

  struct Counterexample {
    GeneratorBounds bounds;
    std::uint64_t   seed = 0;  // seeds the Rng handed to the property
    std::string     message;
    Json            instance;
    std::size_t     shrink_steps = 0;
  };

  struct PropertyOutcome {
    std::string                   name;
    std::size_t                   passed = 0;
    std::size_t                   failed = 0;
    double                        seconds = 0;
    std::optional<Counterexample> counterexample;  // first failure, shrunk
  };

  struct AxiomReport {
    std::uint64_t                seed = 0;
    std::vector<PropertyOutcome> outcomes;
    bool                         ok() const;
  };

  // Seed for trial i of the named property; pure function of its inputs.
  std::uint64_t trial_seed(std::uint64_t seed, std::string const& property, std::size_t i);

  // Shrinks vertex count, then edge count, then gamma dimension, keeping
  // each reduction only if some derived seed still fails.
  Counterexample shrink(Property const& p, Counterexample start, Fault fault);

  AxiomReport run_axioms(AxiomConfig const& config);
  Json        to_json(AxiomReport const& r);
  Json        to_json(GeneratorBounds const& b);

}  // namespace quivcon

#endif  // QUIVCON_AXIOMS_HPP_
