#include "quivcon/axioms.hpp"

#include <algorithm>
#include <chrono>

#include "quivcon/algebra.hpp"
#include "quivcon/equivalence.hpp"
#include "quivcon/linalg.hpp"

namespace quivcon {

  namespace {
    // Path algebras above this dimension are resampled: the bimodule checks
    // are dense and grow like dim^4.
    constexpr std::size_t kMaxAlgebraDim = 20;

    using ConnPtr = std::shared_ptr<QuiverConnection const>;

    ConnPtr share(QuiverConnection c) {
      return std::make_shared<QuiverConnection const>(std::move(c));
    }

    Json describe(std::vector<BoundQuiver> const& objects, std::vector<QuiverConnection> const& arrows) {
      Json o = Json::array(), a = Json::array();
      for (auto const& b : objects) {
        o.push_back(to_json(b));
      }
      for (auto const& c : arrows) {
        a.push_back(to_json(c));
      }
      return {{"objects", o}, {"connections", a}};
    }

    Verdict first_failure(std::initializer_list<std::pair<char const*, Verdict>> checks) {
      for (auto const& [what, v] : checks) {
        if (!v.ok) {
          return Verdict::fail(std::string(what) + ": " + v.message);
        }
      }
      return Verdict::pass();
    }

    Verdict invertible(ConnectionMorphism const& f, char const* what) {
      if (auto v = check_morphism(f); !v.ok) {
        return Verdict::fail(std::string(what) + " is not a 2-morphism: " + v.message);
      }
      if (!f.is_invertible()) {
        return Verdict::fail(std::string(what) + " is not invertible");
      }
      return Verdict::pass();
    }

    Verdict equal(Matrix const& a, Matrix const& b, std::string const& what) {
      if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return Verdict::fail(what + ": shapes differ");
      }
      for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
          if (a(r, c) != b(r, c)) {
            return Verdict::fail(what + ": entry (" + std::to_string(r) + "," + std::to_string(c)
                                 + ") is " + a(r, c).to_string() + " vs " + b(r, c).to_string());
          }
        }
      }
      return Verdict::pass();
    }

    void corrupt(Matrix& m) {
      if (m.rows() > 0 && m.cols() > 0) {
        m(0, 0) += Scalar(1);
      }
    }

    Trial ideal_connectedness(Rng& rng, GeneratorBounds const& b, Fault) {
      auto inst = random_truncated_instance(rng, b);
      return {check_ideally_connected(inst.connection, inst.source, inst.target),
              describe({inst.source, inst.target}, {inst.connection})};
    }

    Trial associativity(Rng& rng, GeneratorBounds const& b, Fault) {
      auto t = random_composable(rng, b, 3);
      auto a = associator(t.arrows[0], t.arrows[1], t.arrows[2]);
      return {invertible(a, "associator"), describe(t.objects, t.arrows)};
    }

    Trial unit_laws(Rng& rng, GeneratorBounds const& b, Fault) {
      auto t = random_composable(rng, b, 1);
      auto v = invertible(left_unitor(t.arrows[0]), "left unitor");
      if (v.ok) {
        v = invertible(right_unitor(t.arrows[0]), "right unitor");
      }
      return {v, describe(t.objects, t.arrows)};
    }

    Trial interchange(Rng& rng, GeneratorBounds const& b, Fault fault) {
      auto t  = random_composable(rng, b, 2);
      auto G  = share(t.arrows[0]);
      auto D  = share(t.arrows[1]);
      auto G2 = share(conjugate_connection(*G, random_block_invertible(rng, *G), "'"));
      auto D2 = share(conjugate_connection(*D, random_block_invertible(rng, *D), "'"));
      auto f1 = random_morphism(rng, G, G2);
      auto f2 = random_morphism(rng, G2, G);
      auto g1 = random_morphism(rng, D, D2);
      auto g2 = random_morphism(rng, D2, D);
      auto lhs =
          compose_horizontal(compose_vertical(f1, f2), compose_vertical(g1, g2)).matrix();
      if (fault == Fault::interchange) {
        corrupt(lhs);
      }
      auto rhs  = compose_vertical(compose_horizontal(f1, g1), compose_horizontal(f2, g2)).matrix();
      auto json = describe(t.objects, {*G, *D, *G2, *D2});
      json["morphisms"] = {to_json(f1.matrix()), to_json(f2.matrix()), to_json(g1.matrix()),
                           to_json(g2.matrix())};
      return {equal(lhs, rhs, "(f2 f1)*(g2 g1) vs (f2*g2)(f1*g1)"), json};
    }

    struct Images {
      ComposableTriple             triple;
      std::vector<ObjectImage>     objects;
      std::vector<ConnectionImage> arrows;
    };

    // Two-sided projective basis on the full basis of a P-image bimodule.
    Verdict lifted(BimoduleWithQuiverData const& m) {
      if (!radical_symmetry_check(m)) {
        return Verdict::fail("not radically symmetric");
      }
      return check_projective_basis(m, projective_basis(m));
    }

    Verdict lifted(Images const& im) {
      for (std::size_t i = 0; i < im.arrows.size(); ++i) {
        if (auto v = lifted(*im.arrows[i].bimodule); !v.ok) {
          return Verdict::fail("P(connection " + std::to_string(i) + "): " + v.message);
        }
      }
      return Verdict::pass();
    }

    Images composable_images(Rng& rng, GeneratorBounds const& b, std::size_t length) {
      Images out;
      out.triple = random_small_composable(rng, b, length, kMaxAlgebraDim);
      for (auto const& o : out.triple.objects) {
        out.objects.push_back(p_object(o));
      }
      for (std::size_t i = 0; i < length; ++i) {
        out.arrows.push_back(p_connection(share(out.triple.arrows[i]), out.objects[i],
                                          out.objects[i + 1]));
      }
      return out;
    }

    Trial splittings(Rng& rng, GeneratorBounds const& b, Fault) {
      auto im = composable_images(rng, b, 2);
      auto t  = tensor_compose(im.arrows[0].bimodule, im.arrows[1].bimodule);
      return {first_failure({{"lifted basis", lifted(im)}, {"splittings", check_splittings(t)}}),
              describe(im.triple.objects, im.triple.arrows)};
    }

    Trial mu_inverse(Rng& rng, GeneratorBounds const& b, Fault fault) {
      auto im = composable_images(rng, b, 2);
      auto m  = mu(im.arrows[0], im.arrows[1], im.objects[0], im.objects[1], im.objects[2]);
      if (fault == Fault::mu) {
        auto bad = m.mu.matrix();
        corrupt(bad);
        m.mu = BimoduleMorphism(m.mu.source_ptr(), m.mu.target_ptr(), bad);
      }
      return {first_failure({{"lifted basis", lifted(im)}, {"mu", check_mu(m)}}),
              describe(im.triple.objects, im.triple.arrows)};
    }

    Trial mu_naturality(Rng& rng, GeneratorBounds const& b, Fault fault) {
      auto im = composable_images(rng, b, 2);
      auto G  = im.arrows[0].connection;
      auto D  = im.arrows[1].connection;
      auto G2 = share(conjugate_connection(*G, random_block_invertible(rng, *G), "'"));
      auto D2 = share(conjugate_connection(*D, random_block_invertible(rng, *D), "'"));
      auto f  = random_morphism(rng, G, G2);
      auto g  = random_morphism(rng, D, D2);
      auto m1 = mu(im.arrows[0], im.arrows[1], im.objects[0], im.objects[1], im.objects[2]);
      auto m2 = mu(p_connection(G2, im.objects[0], im.objects[1]),
                   p_connection(D2, im.objects[1], im.objects[2]), im.objects[0], im.objects[1],
                   im.objects[2]);
      if (fault == Fault::mu) {
        auto bad = m2.mu.matrix();
        corrupt(bad);
        m2.mu = BimoduleMorphism(m2.mu.source_ptr(), m2.mu.target_ptr(), bad);
      }
      auto json = describe(im.triple.objects, {*G, *D, *G2, *D2});
      json["morphisms"] = {to_json(f.matrix()), to_json(g.matrix())};
      return {first_failure({{"lifted basis", lifted(im)},
                             {"naturality", check_mu_naturality(f, g, m1, m2)}}),
              json};
    }

    Trial lifted_basis(Rng& rng, GeneratorBounds const& b, Fault) {
      auto inst = random_small_instance(rng, b, uniform(rng, 0, 1) == 1, kMaxAlgebraDim);
      auto img  = p_connection(share(inst.connection), p_object(inst.source), p_object(inst.target));
      return {lifted(*img.bimodule), describe({inst.source, inst.target}, {inst.connection})};
    }

    Trial essential_fullness(Rng& rng, GeneratorBounds const& b, Fault) {
      auto inst = random_small_instance(rng, b, uniform(rng, 0, 1) == 1, kMaxAlgebraDim);
      auto src  = p_object(inst.source);
      auto tgt  = p_object(inst.target);
      auto c    = share(inst.connection);
      auto f    = roundtrip_connection(c, src, tgt);
      return {first_failure({{"lifted basis", lifted(*p_connection(c, src, tgt).bimodule)},
                             {"round trip", invertible(f, "round-trip 2-morphism")}}),
              describe({inst.source, inst.target}, {inst.connection})};
    }

    BoundQuiver small_bound_quiver(Rng& rng, GeneratorBounds const& b) {
      for (;;) {
        auto q  = random_quiver(rng, b);
        auto n  = uniform(rng, 2, std::max<std::size_t>(b.max_nilpotency, 2));
        auto bq = random_bound_quiver(rng, q, n, uniform(rng, 0, 2));
        if (quotient_dim(bq) <= kMaxAlgebraDim) {
          return bq;
        }
      }
    }

    Trial essential_surjectivity(Rng& rng, GeneratorBounds const& b, Fault) {
      auto bq  = small_bound_quiver(rng, b);
      auto o   = p_object(bq);
      auto gp  = gabriel_presentation(*o.algebra);
      auto iso = roundtrip_algebra(*o.algebra);
      return {first_failure({{"presentation", compare_presentation(bq, gp, *o.quotient)},
                             {"algebra isomorphism", iso.homomorphism},
                             {"delta1 square", iso.delta1_square}}),
              describe({bq}, {})};
    }

    Trial radical_oracle(Rng& rng, GeneratorBounds const& b, Fault) {
      auto            bq = small_bound_quiver(rng, b);
      QuotientAlgebra qa(bq);
      auto            r  = radical(FiniteDimAlgebra::from_quotient(qa));
      Verdict         v  = r == radical_power_basis(qa, 1)
                               ? Verdict::pass()
                               : Verdict::fail("trace-form radical has dim " + std::to_string(r.dim())
                                               + ", arrow ideal has dim "
                                               + std::to_string(radical_power_basis(qa, 1).dim()));
      return {v, describe({bq}, {})};
    }

    std::uint64_t splitmix(std::uint64_t x) {
      x += 0x9E3779B97F4A7C15ULL;
      x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
      x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
      return x ^ (x >> 31);
    }

    Trial guarded(Property const& p, std::uint64_t seed, GeneratorBounds const& b, Fault fault) {
      Rng rng(seed);
      try {
        return p.run(rng, b, fault);
      } catch (std::exception const& e) {
        return {Verdict::fail(std::string("exception: ") + e.what()), Json()};
      }
    }
  }  // namespace

  Fault parse_fault(std::string const& name) {
    if (name == "none" || name.empty()) {
      return Fault::none;
    }
    if (name == "mu") {
      return Fault::mu;
    }
    if (name == "interchange") {
      return Fault::interchange;
    }
    throw Error("unknown fault \"" + name + "\" (expected none, mu or interchange)");
  }

  std::vector<Property> const& axiom_properties() {
    static std::vector<Property> const props{
        {"ideal-connectedness", ideal_connectedness},
        {"associativity", associativity},
        {"unit-laws", unit_laws},
        {"interchange", interchange},
        {"splittings", splittings},
        {"mu-inverse", mu_inverse},
        {"mu-naturality", mu_naturality},
        {"lifted-basis", lifted_basis},
        {"essential-fullness", essential_fullness},
        {"essential-surjectivity", essential_surjectivity},
        {"radical-oracle", radical_oracle},
    };
    return props;
  }

  std::uint64_t trial_seed(std::uint64_t seed, std::string const& property, std::size_t i) {
    std::uint64_t h = splitmix(seed);
    for (unsigned char c : property) {
      h = splitmix(h ^ c);
    }
    return splitmix(h + i);
  }

  Counterexample shrink(Property const& p, Counterexample best, Fault fault) {
    constexpr std::size_t kAttempts = 25;
    struct Knob {
      std::size_t GeneratorBounds::*field;
      std::size_t                   floor;
    };
    for (auto knob : {Knob{&GeneratorBounds::max_vertices, 1}, Knob{&GeneratorBounds::max_edges, 0},
                      Knob{&GeneratorBounds::max_gamma_dim, 1}}) {
      while (best.bounds.*knob.field > knob.floor) {
        auto smaller = best.bounds;
        --(smaller.*knob.field);
        bool found = false;
        for (std::size_t k = 0; k < kAttempts && !found; ++k) {
          auto seed  = splitmix(best.seed + k + 1);
          auto trial = guarded(p, seed, smaller, fault);
          if (!trial.verdict.ok) {
            best  = {smaller, seed, trial.verdict.message, trial.instance, best.shrink_steps + 1};
            found = true;
          }
        }
        if (!found) {
          break;
        }
      }
    }
    return best;
  }

  bool AxiomReport::ok() const {
    for (auto const& o : outcomes) {
      if (o.failed > 0) {
        return false;
      }
    }
    return true;
  }

  AxiomReport run_axioms(AxiomConfig const& config) {
    AxiomReport report;
    report.seed = config.seed;
    for (auto const& p : axiom_properties()) {
      if (!config.only.empty()
          && std::find(config.only.begin(), config.only.end(), p.name) == config.only.end()) {
        continue;
      }
      PropertyOutcome out;
      out.name   = p.name;
      auto start = std::chrono::steady_clock::now();
      for (std::size_t i = 0; i < config.count; ++i) {
        auto seed  = trial_seed(config.seed, p.name, i);
        auto trial = guarded(p, seed, config.bounds, config.fault);
        if (trial.verdict.ok) {
          ++out.passed;
          continue;
        }
        ++out.failed;
        if (!out.counterexample) {
          out.counterexample =
              shrink(p, {config.bounds, seed, trial.verdict.message, trial.instance, 0}, config.fault);
        }
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.outcomes.push_back(std::move(out));
    }
    return report;
  }

  Json to_json(GeneratorBounds const& b) {
    return {{"max_vertices", b.max_vertices},
            {"max_edges", b.max_edges},
            {"max_nilpotency", b.max_nilpotency},
            {"max_gamma_dim", b.max_gamma_dim}};
  }

  Json to_json(AxiomReport const& r) {
    Json props = Json::array();
    for (auto const& o : r.outcomes) {
      Json j = {{"name", o.name}, {"passed", o.passed}, {"failed", o.failed}, {"seconds", o.seconds}};
      if (o.counterexample) {
        auto const& c       = *o.counterexample;
        j["counterexample"] = {{"bounds", to_json(c.bounds)},
                               {"seed", c.seed},
                               {"message", c.message},
                               {"shrink_steps", c.shrink_steps},
                               {"instance", c.instance}};
      }
      props.push_back(std::move(j));
    }
    return {{"seed", r.seed}, {"status", r.ok() ? "pass" : "fail"}, {"properties", props}};
  }

}  // namespace quivcon
