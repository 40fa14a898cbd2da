#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quivcon/algebra.hpp"
#include "quivcon/axioms.hpp"
#include "quivcon/equivalence.hpp"
#include "quivcon/io.hpp"
#include "quivcon/quotient_algebra.hpp"

namespace fs = std::filesystem;
using namespace quivcon;

namespace {

  enum Exit { kPass = 0, kFail = 1, kError = 2 };

  // Semantic failure discovered mid-command; carries its witness.
  struct Failure {
    std::string message;
    Json        witness;
  };

  struct Report {
    std::string                  command;
    std::string                  status = "pass";
    std::string                  message;
    Json                         witnesses = Json::object();
    std::optional<std::uint64_t> seed;
    double                       seconds = 0;

    void fail(std::string why) {
      if (status == "pass") {
        status  = "fail";
        message = std::move(why);
      }
    }
    // Records a named check; the first failing one sets the message.
    void check(std::string const& name, Verdict const& v) {
      witnesses["checks"][name] = v.ok ? "pass" : v.message;
      if (!v.ok) {
        fail(name + ": " + v.message);
      }
    }
    int exit_code() const {
      return status == "pass" ? kPass : status == "fail" ? kFail : kError;
    }
    Json json() const {
      Json j = {{"command", command}, {"status", status}, {"seconds", seconds},
                {"witnesses", witnesses}};
      if (!message.empty()) {
        j["message"] = message;
      }
      if (seed) {
        j["seed"] = *seed;
      }
      return j;
    }
  };

  struct Options {
    std::vector<std::string> field;
    std::string              file;
    std::string              source, target;
    std::string              out;
    bool                     json = false;

    std::uint64_t            seed  = AxiomConfig{}.seed;
    std::size_t              count = AxiomConfig{}.count;
    GeneratorBounds          bounds;
    std::string              fault = "none";
    std::vector<std::string> only;
  };

  std::optional<Field> field_override(Options const& o) {
    if (o.field.empty()) {
      return std::nullopt;
    }
    auto name = o.field[0];
    std::transform(name.begin(), name.end(), name.begin(), ::tolower);
    if (name == "q" && o.field.size() == 1) {
      return Field::rationals();
    }
    if (name == "gf" && o.field.size() == 2) {
      return Field::prime(std::stoull(o.field[1]));
    }
    throw Error("--field expects \"q\" or \"gf <p>\"");
  }

  Instance load(fs::path const& path, Options const& o) {
    auto inst = read_instance(path);
    if (auto f = field_override(o)) {
      inst.field = *f;
    }
    return inst;
  }

  Instance load_kind(fs::path const& path, Options const& o, char const* kind) {
    auto inst = load(path, o);
    if (inst.kind != kind) {
      throw ParseError(path.string() + ": /kind: expected " + kind + ", got " + inst.kind);
    }
    return inst;
  }

  template <class F>
  auto located(Instance const& inst, F&& f) {
    try {
      return f();
    } catch (ParseError const& e) {
      throw ParseError(inst.path.string() + ": " + e.what());
    }
  }

  BoundQuiver bound_quiver_of(Instance const& inst) {
    return located(inst, [&] { return bound_quiver_from_json(inst.payload, inst.field, "/payload"); });
  }
  QuiverConnection connection_of(Instance const& inst) {
    return located(inst, [&] { return connection_from_json(inst.payload, inst.field, "/payload"); });
  }
  LoadedAlgebra algebra_of(Instance const& inst) {
    return located(inst, [&] { return algebra_from_json(inst.payload, inst.field, "/payload"); });
  }

  // Quiver data from the file, else the canonical choice. Not basic is a
  // semantic failure, not an input error.
  AlgebraWithQuiverData quiver_data_of(LoadedAlgebra la) {
    if (la.data) {
      return std::move(*la.data);
    }
    try {
      return canonical_quiver_data(la.algebra);
    } catch (NotBasic const& e) {
      throw Failure{e.what(), Json()};
    }
  }

  std::vector<std::size_t> radical_dims(std::vector<Subspace> const& powers) {
    std::vector<std::size_t> dims;
    for (auto const& p : powers) {
      dims.push_back(p.dim());
    }
    if (dims.empty() || dims.back() != 0) {
      dims.push_back(0);
    }
    return dims;
  }

  std::vector<std::size_t> radical_dims(QuotientAlgebra const& qa) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 1;; ++k) {
      dims.push_back(radical_power_basis(qa, k).dim());
      if (dims.back() == 0) {
        return dims;
      }
    }
  }

  Json describe(BoundQuiver const& bq, QuotientAlgebra const& qa) {
    return {{"vertices", bq.quiver().vertex_count()},
            {"edges", bq.quiver().edge_count()},
            {"nilpotency_bound", bq.bound()},
            {"generators", bq.ideal().generators().size()},
            {"dim", qa.dim()},
            {"radical_dims", radical_dims(qa)}};
  }

  Json gamma_dims(QuiverConnection const& c) {
    Json j = Json::object();
    for (auto const& [gh, labels] : c.gamma_labels()) {
      j[c.source().vertex_name(gh.first) + "," + c.target().vertex_name(gh.second)] = labels.size();
    }
    return j;
  }

  // Both bound quivers a connection runs between.
  std::pair<BoundQuiver, BoundQuiver> endpoints(Options const& o) {
    if (o.source.empty() || o.target.empty()) {
      throw ParseError("connection commands need --source and --target bound quiver files");
    }
    return {bound_quiver_of(load_kind(o.source, o, "bound_quiver")),
            bound_quiver_of(load_kind(o.target, o, "bound_quiver"))};
  }

  void check_endpoints(QuiverConnection const& c, BoundQuiver const& s, BoundQuiver const& t) {
    if (!(c.source() == s.quiver()) || !(c.target() == t.quiver())) {
      throw ParseError("--source/--target quivers differ from the connection's");
    }
  }

  void write_instance(fs::path const& path, std::string const& kind, std::string const& id,
                      Field const& field, Json payload, Report& r) {
    write_json(path, envelope(kind, id, field, std::move(payload)));
    r.witnesses["written"].push_back(path.string());
  }

  fs::path sibling(fs::path const& out, std::string const& suffix) {
    return out.parent_path() / (out.stem().string() + suffix + ".json");
  }

  // ---- commands --------------------------------------------------------

  void cmd_validate(Options const& o, Report& r) {
    auto inst = load(o.file, o);
    r.witnesses["kind"] = inst.kind;
    r.witnesses["field"] = inst.field.name();
    if (inst.kind == "quiver") {
      auto q = located(inst, [&] { return quiver_from_json(inst.payload, "/payload"); });
      r.witnesses["vertices"] = q.vertex_count();
      r.witnesses["edges"]    = q.edge_count();
    } else if (inst.kind == "bound_quiver") {
      auto bq = bound_quiver_of(inst);
      auto ob = p_object(bq, inst.field);
      r.witnesses.update(describe(bq, *ob.quotient));
      r.check("associativity", ob.quotient->check_associativity());
    } else if (inst.kind == "connection") {
      auto c = connection_of(inst);
      r.witnesses["gamma_dims"] = gamma_dims(c);
      r.check("transport", c.validate());
      if (r.status == "pass" && !o.source.empty()) {
        auto [s, t] = endpoints(o);
        check_endpoints(c, s, t);
        r.check("ideally_connected", check_ideally_connected(c, s, t));
      }
    } else if (inst.kind == "algebra") {
      auto la = algebra_of(inst);
      r.witnesses["dim"] = la.algebra.dim();
      r.check("algebra", check_algebra(la.algebra));
      if (r.status != "pass") {
        return;
      }
      r.witnesses["quiver_data"] = la.data ? "file" : "canonical";
      auto awd = quiver_data_of(std::move(la));
      r.witnesses["vertices"]     = awd.idempotents().size();
      r.witnesses["radical_dims"] = radical_dims(awd.radical_powers());
      r.check("quiver_data", validate_quiver_data(awd));
    } else if (inst.kind == "bimodule") {
      auto m = located(inst, [&] { return bimodule_from_instance(inst); });
      r.witnesses["dim"] = m.dim();
      r.check("bimodule", validate_bimodule(m));
      if (r.status != "pass") {
        return;
      }
      r.check("radically_symmetric", radical_symmetry_check(m)
                                         ? Verdict::pass()
                                         : Verdict::fail("rad(A) M differs from M rad(B)"));
      if (r.status != "pass") {
        return;
      }
      auto f = rad_filtration(m);
      r.witnesses["rad_dims"] = {f.rad.dim(), f.rad2.dim()};
      r.check("quiver_data", validate_bimodule_quiver_data(m));
      auto pb = projective_basis(m);
      r.witnesses["dualizable"] = pb.dualizable;
      if (!pb.dualizable) {
        r.witnesses["not_dualizable"] = pb.reason;
      }
    } else {
      throw ParseError(inst.path.string() + ": /kind: unknown kind " + inst.kind);
    }
  }

  void cmd_present(Options const& o, Report& r) {
    auto inst = load_kind(o.file, o, "algebra");
    auto awd  = quiver_data_of(algebra_of(inst));
    auto gp   = gabriel_presentation(awd);
    auto qa   = QuotientAlgebra(gp.bound_quiver);
    r.witnesses["presentation"] = describe(gp.bound_quiver, qa);
    r.witnesses["bound_quiver"] = to_json(gp.bound_quiver);
    r.witnesses["rho"]          = to_json(gp.rho);
    r.check("presentation", check_presentation(gp, awd));
    r.check("dimension", qa.dim() == awd.dim()
                             ? Verdict::pass()
                             : Verdict::fail("dim kQ/I = " + std::to_string(qa.dim()) + ", dim A = "
                                             + std::to_string(awd.dim())));
    if (!o.out.empty()) {
      write_instance(o.out, "bound_quiver", inst.id + ".presentation", inst.field,
                     to_json(gp.bound_quiver), r);
    }
  }

  void cmd_functor(Options const& o, Report& r) {
    auto inst = load(o.file, o);
    if (inst.kind == "bound_quiver") {
      auto ob = p_object(bound_quiver_of(inst), inst.field);
      r.witnesses.update(describe(ob.bound_quiver, *ob.quotient));
      r.check("quiver_data", validate_quiver_data(*ob.algebra));
      if (!o.out.empty()) {
        write_instance(o.out, "algebra", inst.id + ".P", inst.field, to_json(*ob.algebra), r);
      }
      return;
    }
    if (inst.kind != "connection") {
      throw ParseError(inst.path.string() + ": /kind: functor takes a bound_quiver or connection");
    }
    auto c      = std::make_shared<QuiverConnection const>(connection_of(inst));
    auto [s, t] = endpoints(o);
    check_endpoints(*c, s, t);
    r.witnesses["gamma_dims"] = gamma_dims(*c);
    r.check("transport", c->validate());
    if (r.status == "pass") {
      r.check("ideally_connected", check_ideally_connected(*c, s, t));
    }
    if (r.status != "pass") {
      return;
    }
    auto so  = p_object(s, inst.field);
    auto to  = p_object(t, inst.field);
    auto img = p_connection(c, so, to);
    auto const& m = *img.bimodule;
    r.witnesses["dim"] = m.dim();
    r.check("bimodule", validate_bimodule(m));
    r.check("radically_symmetric", radical_symmetry_check(m)
                                       ? Verdict::pass()
                                       : Verdict::fail("rad(A) M differs from M rad(B)"));
    r.check("quiver_data", validate_bimodule_quiver_data(m));
    auto pb = projective_basis(m);
    r.check("lifted_basis", check_projective_basis(m, pb));
    if (!o.out.empty()) {
      fs::path out = o.out;
      auto     left = sibling(out, ".source"), right = sibling(out, ".target");
      write_instance(left, "algebra", inst.id + ".source", inst.field, to_json(*so.algebra), r);
      write_instance(right, "algebra", inst.id + ".target", inst.field, to_json(*to.algebra), r);
      write_instance(out, "bimodule", inst.id + ".P", inst.field,
                     to_json(m, {inst.id + ".source", left.filename().string()},
                             {inst.id + ".target", right.filename().string()}),
                     r);
    }
  }

  void algebra_roundtrip(AlgebraWithQuiverData const& awd, Report& r) {
    auto iso = roundtrip_algebra(awd);
    r.witnesses["presentation"] = to_json(iso.presentation.bound_quiver);
    r.witnesses["phi"]          = to_json(iso.phi);
    r.witnesses["phi_inverse"]  = to_json(iso.phi_inverse);
    r.check("homomorphism", iso.homomorphism);
    r.check("delta1_square", iso.delta1_square);
    // Recorded, never decisive.
    r.witnesses["delta2_square"] = iso.delta2_square.ok ? "pass" : iso.delta2_square.message;
  }

  void cmd_roundtrip(Options const& o, Report& r) {
    auto inst = load(o.file, o);
    r.witnesses["kind"] = inst.kind;
    if (inst.kind == "connection") {
      auto c      = std::make_shared<QuiverConnection const>(connection_of(inst));
      auto [s, t] = endpoints(o);
      check_endpoints(*c, s, t);
      auto f = roundtrip_connection(c, p_object(s, inst.field), p_object(t, inst.field));
      r.witnesses["recovered"]   = to_json(f.target());
      r.witnesses["intertwiner"] = to_json(f.matrix());
      r.check("2-morphism", check_morphism(f));
      r.check("invertible", f.is_invertible() ? Verdict::pass()
                                              : Verdict::fail("intertwiner is singular"));
    } else if (inst.kind == "bound_quiver") {
      auto bq = bound_quiver_of(inst);
      auto ob = p_object(bq, inst.field);
      auto gp = gabriel_presentation(*ob.algebra);
      r.check("presentation", compare_presentation(bq, gp, *ob.quotient));
      algebra_roundtrip(*ob.algebra, r);
    } else if (inst.kind == "algebra") {
      algebra_roundtrip(quiver_data_of(algebra_of(inst)), r);
    } else if (inst.kind == "bimodule") {
      auto m   = located(inst, [&] { return bimodule_from_instance(inst); });
      auto rec = connection_from_bimodule(m);
      r.witnesses["recovered"] = to_json(rec.connection);
      r.check("transport", rec.connection.validate());
    } else {
      throw ParseError(inst.path.string() + ": /kind: no round trip for " + inst.kind);
    }
  }

  void cmd_check_axioms(Options const& o, Report& r) {
    if (auto f = field_override(o); f && !f->is_rational()) {
      throw Error("check-axioms generates instances over Q only");
    }
    AxiomConfig config;
    config.seed   = o.seed;
    config.count  = o.count;
    config.bounds = o.bounds;
    config.fault  = parse_fault(o.fault);
    config.only   = o.only;
    for (auto const& name : o.only) {
      auto const& props = axiom_properties();
      if (std::none_of(props.begin(), props.end(), [&](auto const& p) { return p.name == name; })) {
        throw Error("unknown property \"" + name + "\"");
      }
    }
    r.seed     = o.seed;
    auto rep   = run_axioms(config);
    auto j     = to_json(rep);
    r.witnesses["bounds"]     = to_json(o.bounds);
    r.witnesses["count"]      = o.count;
    r.witnesses["fault"]      = o.fault;
    r.witnesses["properties"] = j["properties"];
    for (auto const& p : rep.outcomes) {
      if (p.counterexample) {
        r.fail(p.name + ": " + p.counterexample->message);
      }
    }
    if (!o.out.empty()) {
      write_json(o.out, r.json());
    }
  }

  // ---- output ----------------------------------------------------------

  void print_human(Report const& r, std::ostream& os) {
    os << r.command << ": " << r.status;
    if (!r.message.empty()) {
      os << " (" << r.message << ")";
    }
    os << "\n";
    if (r.seed) {
      os << "  seed: " << *r.seed << "\n";
    }
    if (r.command == "check-axioms" && r.witnesses.contains("properties")) {
      for (auto const& p : r.witnesses["properties"]) {
        std::size_t passed = p["passed"], failed = p["failed"];
        os << "  " << p["name"].get<std::string>() << ": " << passed << "/" << passed + failed
           << " passed in " << p["seconds"].get<double>() << " s\n";
        if (p.contains("counterexample")) {
          auto const& c = p["counterexample"];
          os << "    counterexample (seed " << c["seed"].get<std::uint64_t>() << ", bounds "
             << c["bounds"].dump() << ", " << c["shrink_steps"].get<std::size_t>()
             << " shrink steps): " << c["message"].get<std::string>() << "\n";
        }
      }
    } else {
      for (auto it = r.witnesses.begin(); it != r.witnesses.end(); ++it) {
        auto text = it->dump();
        if (text.size() > 160) {
          text = "<" + std::to_string(text.size()) + " bytes, see --json>";
        }
        os << "  " << it.key() << ": " << text << "\n";
      }
    }
    os << "  time: " << r.seconds << " s\n";
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound quivers, quiver connections and basic algebras with exact arithmetic"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "Override the file's field: q | gf <p>")->expected(1, 2);
    sub->add_flag("--json", o.json, "Machine-readable report on stdout");
  };
  auto endpoints_opts = [&](CLI::App* sub) {
    sub->add_option("--source", o.source, "Bound quiver file for the connection's source");
    sub->add_option("--target", o.target, "Bound quiver file for the connection's target");
  };

  auto* validate = app.add_subcommand("validate", "Check an instance file of any kind");
  validate->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  endpoints_opts(validate);
  common(validate);

  auto* present = app.add_subcommand("present", "Gabriel presentation of an algebra file");
  present->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  present->add_option("--out", o.out, "Write the presented bound quiver here");
  common(present);

  auto* functor = app.add_subcommand("functor", "Image of a bound quiver or connection under P");
  functor->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  functor->add_option("--out", o.out, "Write the image here (algebras go next to a bimodule)");
  endpoints_opts(functor);
  common(functor);

  auto* roundtrip = app.add_subcommand("roundtrip", "Run the round trip matching the file's kind");
  roundtrip->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  endpoints_opts(roundtrip);
  common(roundtrip);

  auto* axioms = app.add_subcommand("check-axioms", "Randomized property suite");
  axioms->add_option("--seed", o.seed, "Master seed");
  axioms->add_option("--count", o.count, "Instances per property");
  axioms->add_option("--max-vertices", o.bounds.max_vertices);
  axioms->add_option("--max-edges", o.bounds.max_edges);
  axioms->add_option("--max-gamma-dim", o.bounds.max_gamma_dim);
  axioms->add_option("--max-nilpotency", o.bounds.max_nilpotency);
  axioms->add_option("--only", o.only, "Run only the named properties")->delimiter(',');
  axioms->add_option("--inject-fault", o.fault, "Negative control: none | mu | interchange");
  axioms->add_option("--out", o.out, "Write the full report (with counterexamples) here");
  common(axioms);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e);
    return code == 0 ? kPass : kError;
  }

  Report r;
  r.command  = app.get_subcommands().front()->get_name();
  auto start = std::chrono::steady_clock::now();
  try {
    if (r.command == "validate") {
      cmd_validate(o, r);
    } else if (r.command == "present") {
      cmd_present(o, r);
    } else if (r.command == "functor") {
      cmd_functor(o, r);
    } else if (r.command == "roundtrip") {
      cmd_roundtrip(o, r);
    } else {
      cmd_check_axioms(o, r);
    }
  } catch (Failure const& f) {
    r.status  = "fail";
    r.message = f.message;
    if (!f.witness.is_null()) {
      r.witnesses["failure"] = f.witness;
    }
  } catch (ParseError const& e) {
    r.status  = "error";
    r.message = e.what();
  } catch (UnsupportedField const& e) {
    r.status  = "error";
    r.message = e.what();
  } catch (Error const& e) {
    // Loading succeeded if we got here with a file read, so this is the
    // input failing a precondition of the construction.
    r.status  = r.witnesses.empty() ? "error" : "fail";
    r.message = e.what();
  } catch (std::exception const& e) {
    r.status  = "error";
    r.message = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (o.json) {
    std::cout << r.json().dump(2) << "\n";
  } else {
    print_human(r, r.status == "pass" ? std::cout : std::cerr);
  }
  return r.exit_code();
}
