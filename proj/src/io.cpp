#include "quivcon/io.hpp"

#include <fstream>
#include <sstream>

namespace quivcon {

  namespace {
    [[noreturn]] void fail(std::string const& where, std::string const& what) {
      throw ParseError((where.empty() ? "/" : where) + ": " + what);
    }

    Json const& field_of(Json const& j, char const* key, std::string const& where) {
      if (!j.is_object()) {
        fail(where, "expected an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        fail(where, std::string("missing \"") + key + "\"");
      }
      return *it;
    }

    Json const& array_of(Json const& j, char const* key, std::string const& where) {
      auto const& a = field_of(j, key, where);
      if (!a.is_array()) {
        fail(where + "/" + key, "expected an array");
      }
      return a;
    }

    std::string string_of(Json const& j, std::string const& where) {
      if (!j.is_string()) {
        fail(where, "expected a string");
      }
      return j.get<std::string>();
    }

    std::size_t index_of(Json const& j, std::string const& where) {
      if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(where, "expected a non-negative integer");
      }
      return j.get<std::size_t>();
    }

    std::string at(std::string const& where, std::size_t i) {
      return where + "/" + std::to_string(i);
    }

    std::string block_key(Quiver const& G, Quiver const& H, VertexPair gh) {
      return G.vertex_name(gh.first) + "," + H.vertex_name(gh.second);
    }

    VertexPair parse_block_key(std::string const& key, Quiver const& G, Quiver const& H,
                               std::string const& where) {
      auto comma = key.find(',');
      if (comma == std::string::npos) {
        fail(where, "block key \"" + key + "\" is not \"g,h\"");
      }
      auto g = G.find_vertex(key.substr(0, comma));
      auto h = H.find_vertex(key.substr(comma + 1));
      if (!g || !h) {
        fail(where, "block key \"" + key + "\" names an unknown vertex");
      }
      return {*g, *h};
    }

    Field parse_field(Json const& j, std::string const& where) {
      auto s = string_of(j, where);
      if (s == "Q") {
        return Field::rationals();
      }
      if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
        try {
          return Field::prime(std::stoull(s.substr(3, s.size() - 4)));
        } catch (Error const& e) {
          fail(where, e.what());
        } catch (std::exception const&) {
        }
      }
      fail(where, "unknown field \"" + s + "\"");
    }

    Json dense_rows(Matrix const& m) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
          row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
      }
      return rows;
    }

    Matrix dense_from_rows(Json const& j, Field const& f, std::size_t n, std::string const& where) {
      if (!j.is_array() || j.size() != n) {
        fail(where, "expected " + std::to_string(n) + " rows");
      }
      Matrix m(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n) {
          fail(at(where, r), "expected " + std::to_string(n) + " entries");
        }
        for (std::size_t c = 0; c < n; ++c) {
          m(r, c) = scalar_from_json(j[r][c], f, at(at(where, r), c));
        }
      }
      return m;
    }

    PathVector path_vector_from_json(Json const& j, Quiver const& q, Field const& f,
                                     std::string const& where) {
      if (!j.is_array()) {
        fail(where, "expected a list of terms");
      }
      PathVector v;
      for (std::size_t t = 0; t < j.size(); ++t) {
        auto                     w = at(where, t);
        auto const&              edges = array_of(j[t], "path", w);
        std::vector<std::string> ids;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          auto id = string_of(edges[e], at(w + "/path", e));
          if (!q.find_edge(id)) {
            fail(at(w + "/path", e), "unknown edge \"" + id + "\"");
          }
          ids.push_back(id);
        }
        if (ids.empty()) {
          fail(w + "/path", "generator terms must be paths of positive length");
        }
        Path p;
        try {
          p = q.path(ids);
        } catch (Error const& e) {
          fail(w + "/path", e.what());
        }
        v.add(p, scalar_from_json(field_of(j[t], "coeff", w), f, w + "/coeff"));
      }
      return v;
    }

    Json path_vector_to_json(PathVector const& v, Quiver const& q) {
      Json terms = Json::array();
      for (auto const& [p, c] : v.terms()) {
        Json ids = Json::array();
        for (auto e : p.edges()) {
          ids.push_back(q.edge(e).id);
        }
        terms.push_back({{"coeff", to_json(c)}, {"path", ids}});
      }
      return terms;
    }
  }  // namespace

  Json to_json(Scalar const& s) {
    return s.to_string();
  }

  Scalar scalar_from_json(Json const& j, Field const& f, std::string const& where) {
    try {
      if (j.is_number_integer()) {
        return f.from_integer(j.get<long>());
      }
      if (j.is_string()) {
        return f.parse(j.get<std::string>());
      }
    } catch (Error const& e) {
      fail(where, e.what());
    }
    fail(where, "expected a rational \"p/q\"");
  }

  Json to_json(Matrix const& m) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!m(r, c).is_zero()) {
          entries.push_back({r, c, to_json(m(r, c))});
        }
      }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
  }

  Matrix matrix_from_json(Json const& j, Field const& f, std::string const& where) {
    auto   rows = index_of(field_of(j, "rows", where), where + "/rows");
    auto   cols = index_of(field_of(j, "cols", where), where + "/cols");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = f.from_integer(0);
      }
    }
    auto const& es = array_of(j, "entries", where);
    for (std::size_t t = 0; t < es.size(); ++t) {
      auto w = at(where + "/entries", t);
      if (!es[t].is_array() || es[t].size() != 3) {
        fail(w, "expected [row, col, value]");
      }
      auto r = index_of(es[t][0], w + "/0");
      auto c = index_of(es[t][1], w + "/1");
      if (r >= rows || c >= cols) {
        fail(w, "entry outside a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
      }
      m(r, c) = scalar_from_json(es[t][2], f, w + "/2");
    }
    return m;
  }

  Json to_json(Quiver const& q) {
    Json edges = Json::array();
    for (auto const& e : q.edges()) {
      edges.push_back({{"id", e.id}, {"src", q.vertex_name(e.source)}, {"tgt", q.vertex_name(e.target)}});
    }
    return {{"vertices", q.vertices()}, {"edges", edges}};
  }

  Quiver quiver_from_json(Json const& j, std::string const& where) {
    auto const&              vs = array_of(j, "vertices", where);
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      vertices.push_back(string_of(vs[i], at(where + "/vertices", i)));
    }
    auto const&                   es = array_of(j, "edges", where);
    std::vector<Quiver::EdgeSpec> edges;
    for (std::size_t i = 0; i < es.size(); ++i) {
      auto w = at(where + "/edges", i);
      edges.push_back({string_of(field_of(es[i], "id", w), w + "/id"),
                       string_of(field_of(es[i], "src", w), w + "/src"),
                       string_of(field_of(es[i], "tgt", w), w + "/tgt")});
    }
    try {
      return Quiver(vertices, edges);
    } catch (Error const& e) {
      fail(where, e.what());
    }
  }

  Json to_json(BoundQuiver const& bq) {
    auto j          = to_json(bq.quiver());
    Json gens       = Json::array();
    for (auto const& g : bq.ideal().generators()) {
      gens.push_back(path_vector_to_json(g, bq.quiver()));
    }
    j["generators"]       = gens;
    j["nilpotency_bound"] = bq.bound();
    return j;
  }

  BoundQuiver bound_quiver_from_json(Json const& j, Field const& f, std::string const& where) {
    auto                    q  = quiver_from_json(j, where);
    auto                    n  = index_of(field_of(j, "nilpotency_bound", where), where + "/nilpotency_bound");
    std::vector<PathVector> gens;
    if (j.contains("generators")) {
      auto const& gs = array_of(j, "generators", where);
      for (std::size_t i = 0; i < gs.size(); ++i) {
        gens.push_back(path_vector_from_json(gs[i], q, f, at(where + "/generators", i)));
      }
    }
    try {
      return BoundQuiver(std::move(q), std::move(gens), n);
    } catch (Error const& e) {
      fail(where, e.what());
    }
  }

  Json to_json(QuiverConnection const& c) {
    Json gamma = Json::object(), u = Json::object();
    auto const& G = c.source();
    auto const& H = c.target();
    for (auto const& [gh, labels] : c.gamma_labels()) {
      gamma[block_key(G, H, gh)] = labels;
    }
    for (std::size_t g = 0; g < G.vertex_count(); ++g) {
      for (std::size_t h = 0; h < H.vertex_count(); ++h) {
        auto const& m = c.U(g, h);
        if (m.rows() > 0 || m.cols() > 0) {
          u[block_key(G, H, {g, h})] = dense_rows(m);
        }
      }
    }
    return {{"source", to_json(G)}, {"target", to_json(H)}, {"gamma", gamma}, {"U", u},
            {"conventions",
             "U_{g,h} maps (+)_{g'} E(g->g') (x) Gamma_{g',h} to (+)_{h'} Gamma_{g,h'} (x) E(h'->h); "
             "domain basis (edge, gamma) and codomain basis (gamma, edge), each sorted by edge "
             "index then gamma index"}};
  }

  QuiverConnection connection_from_json(Json const& j, Field const& f, std::string const& where) {
    auto G = quiver_from_json(field_of(j, "source", where), where + "/source");
    auto H = quiver_from_json(field_of(j, "target", where), where + "/target");
    std::map<VertexPair, std::vector<std::string>> gamma;
    auto const& gj = field_of(j, "gamma", where);
    if (!gj.is_object()) {
      fail(where + "/gamma", "expected an object keyed \"g,h\"");
    }
    for (auto it = gj.begin(); it != gj.end(); ++it) {
      auto w  = where + "/gamma/" + it.key();
      auto gh = parse_block_key(it.key(), G, H, w);
      if (!it->is_array()) {
        fail(w, "expected a list of labels");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        gamma[gh].push_back(string_of((*it)[i], at(w, i)));
      }
    }
    // First pass fixes the block shapes.
    QuiverConnection shape;
    try {
      shape = QuiverConnection(G, H, gamma, {});
    } catch (Error const& e) {
      fail(where, e.what());
    }
    std::map<VertexPair, Matrix> u;
    if (j.contains("U")) {
      auto const& uj = j["U"];
      if (!uj.is_object()) {
        fail(where + "/U", "expected an object keyed \"g,h\"");
      }
      for (auto it = uj.begin(); it != uj.end(); ++it) {
        auto w  = where + "/U/" + it.key();
        auto gh = parse_block_key(it.key(), G, H, w);
        auto n  = shape.domain_basis(gh.first, gh.second).size();
        auto m  = shape.codomain_basis(gh.first, gh.second).size();
        if (n != m) {
          fail(w, "block is " + std::to_string(m) + "x" + std::to_string(n) + ", not square");
        }
        u[gh] = dense_from_rows(*it, f, n, w);
      }
    }
    try {
      return QuiverConnection(G, H, gamma, u);
    } catch (Error const& e) {
      fail(where, e.what());
    }
  }

  Json to_json(FiniteDimAlgebra const& a) {
    Json sc = Json::array();
    for (auto const& c : a.structure_constants()) {
      sc.push_back({c.i, c.j, c.k, to_json(c.c)});
    }
    Json unit = Json::array();
    for (auto const& u : a.unit()) {
      unit.push_back(to_json(u));
    }
    return {{"labels", a.labels()}, {"unit", unit}, {"structure_constants", sc}};
  }

  Json to_json(AlgebraWithQuiverData const& a) {
    auto j   = to_json(a.algebra());
    Json rad = Json::array();
    for (auto const& v : a.rad().basis()) {
      Json row = Json::array();
      for (auto const& x : v) {
        row.push_back(to_json(x));
      }
      rad.push_back(row);
    }
    j["quiver_data"] = {{"rad", rad}, {"delta1", to_json(a.delta1())}, {"delta2", to_json(a.delta2())}};
    return j;
  }

  LoadedAlgebra algebra_from_json(Json const& j, Field const& f, std::string const& where) {
    auto const&              ls = array_of(j, "labels", where);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      labels.push_back(string_of(ls[i], at(where + "/labels", i)));
    }
    std::size_t n  = labels.size();
    auto const& uj = array_of(j, "unit", where);
    if (uj.size() != n) {
      fail(where + "/unit", "expected " + std::to_string(n) + " coordinates");
    }
    Vector unit;
    for (std::size_t i = 0; i < n; ++i) {
      unit.push_back(scalar_from_json(uj[i], f, at(where + "/unit", i)));
    }
    auto const&                    sj = array_of(j, "structure_constants", where);
    std::vector<StructureConstant> sc;
    for (std::size_t t = 0; t < sj.size(); ++t) {
      auto w = at(where + "/structure_constants", t);
      if (!sj[t].is_array() || sj[t].size() != 4) {
        fail(w, "expected [i, j, k, \"c\"]");
      }
      StructureConstant s{index_of(sj[t][0], w + "/0"), index_of(sj[t][1], w + "/1"),
                          index_of(sj[t][2], w + "/2"), scalar_from_json(sj[t][3], f, w + "/3")};
      if (s.i >= n || s.j >= n || s.k >= n) {
        fail(w, "index out of range for dimension " + std::to_string(n));
      }
      sc.push_back(std::move(s));
    }
    LoadedAlgebra out;
    try {
      out.algebra = FiniteDimAlgebra(f, labels, sc, unit);
    } catch (Error const& e) {
      fail(where, e.what());
    }
    if (j.contains("quiver_data")) {
      auto const&         qd = j["quiver_data"];
      auto                w  = where + "/quiver_data";
      auto const&         rj = array_of(qd, "rad", w);
      std::vector<Vector> rad;
      for (std::size_t r = 0; r < rj.size(); ++r) {
        if (!rj[r].is_array() || rj[r].size() != n) {
          fail(at(w + "/rad", r), "expected " + std::to_string(n) + " coordinates");
        }
        Vector v;
        for (std::size_t c = 0; c < n; ++c) {
          v.push_back(scalar_from_json(rj[r][c], f, at(at(w + "/rad", r), c)));
        }
        rad.push_back(std::move(v));
      }
      auto d1 = matrix_from_json(field_of(qd, "delta1", w), f, w + "/delta1");
      auto d2 = matrix_from_json(field_of(qd, "delta2", w), f, w + "/delta2");
      try {
        out.data.emplace(out.algebra, Subspace::span(n, rad), std::move(d1), std::move(d2));
      } catch (Error const& e) {
        fail(w, e.what());
      }
    }
    return out;
  }

  Json to_json(BimoduleWithQuiverData const& m, AlgebraRef const& left, AlgebraRef const& right) {
    Json la = Json::array(), ra = Json::array();
    for (auto const& x : m.left_action()) {
      la.push_back(to_json(x));
    }
    for (auto const& x : m.right_action()) {
      ra.push_back(to_json(x));
    }
    return {{"left", {{"id", left.id}, {"file", left.file}}},
            {"right", {{"id", right.id}, {"file", right.file}}},
            {"labels", m.labels()},
            {"left_action", la},
            {"right_action", ra},
            {"delta1", to_json(m.delta1())},
            {"delta2", to_json(m.delta2())}};
  }

  BimoduleWithQuiverData bimodule_from_instance(Instance const& inst) {
    if (inst.kind != "bimodule") {
      throw ParseError(inst.path.string() + ": expected a bimodule file, got " + inst.kind);
    }
    auto const& j    = inst.payload;
    std::string base = "/payload";
    std::map<std::string, AlgebraPtr> loaded;
    auto load_side = [&](char const* side) {
      auto w    = base + "/" + side;
      auto ref  = field_of(j, side, base);
      auto id   = string_of(field_of(ref, "id", w), w + "/id");
      auto file = string_of(field_of(ref, "file", w), w + "/file");
      auto path = inst.path.parent_path() / file;
      if (auto it = loaded.find(path.string()); it != loaded.end()) {
        return it->second;
      }
      auto a = read_instance(path);
      if (a.kind != "algebra") {
        fail(w + "/file", file + " is a " + a.kind + " file, not an algebra");
      }
      if (a.id != id) {
        fail(w + "/id", "referenced id \"" + id + "\" but " + file + " has id \"" + a.id + "\"");
      }
      if (!(a.field == inst.field)) {
        fail(w + "/file", file + " is over " + a.field.name() + ", not " + inst.field.name());
      }
      auto la = algebra_from_json(a.payload, a.field, "/payload");
      if (!la.data) {
        fail(w + "/file", file + " carries no quiver data");
      }
      auto ptr = std::make_shared<AlgebraWithQuiverData const>(std::move(*la.data));
      loaded[path.string()] = ptr;
      return AlgebraPtr(ptr);
    };
    AlgebraPtr left, right;
    try {
      left  = load_side("left");
      right = load_side("right");
    } catch (ParseError const& e) {
      throw ParseError(inst.path.string() + ": " + e.what());
    }
    try {
      auto const&              ls = array_of(j, "labels", base);
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        labels.push_back(string_of(ls[i], at(base + "/labels", i)));
      }
      auto read_actions = [&](char const* key) {
        auto const&         a = array_of(j, key, base);
        std::vector<Matrix> out;
        for (std::size_t i = 0; i < a.size(); ++i) {
          out.push_back(matrix_from_json(a[i], inst.field, at(base + "/" + key, i)));
        }
        return out;
      };
      auto la = read_actions("left_action");
      auto ra = read_actions("right_action");
      auto d1 = matrix_from_json(field_of(j, "delta1", base), inst.field, base + "/delta1");
      auto d2 = matrix_from_json(field_of(j, "delta2", base), inst.field, base + "/delta2");
      try {
        return BimoduleWithQuiverData(left, right, labels, la, ra, d1, d2);
      } catch (ParseError const&) {
        throw;
      } catch (Error const& e) {
        fail(base, e.what());
      }
    } catch (ParseError const& e) {
      throw ParseError(inst.path.string() + ": " + e.what());
    }
  }

  Instance parse_instance(Json const& doc, std::filesystem::path const& path) {
    if (!doc.is_object()) {
      fail("", "expected an object");
    }
    auto format = string_of(field_of(doc, "format", ""), "/format");
    if (format != "quivcon") {
      fail("/format", "expected \"quivcon\", got \"" + format + "\"");
    }
    auto const& version = field_of(doc, "version", "");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
      fail("/version", "unsupported format version " + version.dump());
    }
    Instance inst;
    inst.kind = string_of(field_of(doc, "kind", ""), "/kind");
    if (inst.kind != "quiver" && inst.kind != "bound_quiver" && inst.kind != "connection"
        && inst.kind != "algebra" && inst.kind != "bimodule") {
      fail("/kind", "unknown kind \"" + inst.kind + "\"");
    }
    inst.field   = doc.contains("field") ? parse_field(doc["field"], "/field") : Field::rationals();
    inst.id      = doc.contains("id") ? string_of(doc["id"], "/id") : path.stem().string();
    inst.payload = field_of(doc, "payload", "");
    inst.path    = path;
    return inst;
  }

  Instance read_instance(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError(path.string() + ": cannot open");
    }
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (Json::parse_error const& e) {
      throw ParseError(path.string() + ": byte " + std::to_string(e.byte) + ": invalid JSON");
    }
    try {
      return parse_instance(doc, path);
    } catch (ParseError const& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  }

  Json envelope(std::string const& kind, std::string const& id, Field const& field, Json payload) {
    return {{"format", "quivcon"}, {"version", kFormatVersion}, {"kind", kind},
            {"field", field.name()}, {"id", id}, {"payload", std::move(payload)}};
  }

  void write_json(std::filesystem::path const& path, Json const& doc) {
    std::ofstream out(path);
    if (!out) {
      throw Error(path.string() + ": cannot write");
    }
    out << doc.dump(2) << "\n";
  }

  namespace {
    Instance expect(std::filesystem::path const& path, char const* kind) {
      auto inst = read_instance(path);
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
  }  // namespace

  BoundQuiver load_bound_quiver(std::filesystem::path const& path) {
    auto inst = expect(path, "bound_quiver");
    return located(inst, [&] { return bound_quiver_from_json(inst.payload, inst.field, "/payload"); });
  }

  QuiverConnection load_connection(std::filesystem::path const& path) {
    auto inst = expect(path, "connection");
    return located(inst, [&] { return connection_from_json(inst.payload, inst.field, "/payload"); });
  }

  AlgebraWithQuiverData load_algebra_with_data(std::filesystem::path const& path) {
    auto inst = expect(path, "algebra");
    auto la   = located(inst, [&] { return algebra_from_json(inst.payload, inst.field, "/payload"); });
    if (la.data) {
      return std::move(*la.data);
    }
    return canonical_quiver_data(la.algebra);
  }

}  // namespace quivcon
