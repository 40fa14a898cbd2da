#ifndef QUIVCON_IO_HPP_
#define QUIVCON_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "quivcon/bimodule.hpp"
#include "quivcon/connection.hpp"

namespace quivcon {

  using Json = nlohmann::json;

  // Malformed file contents. `what()` starts with the location, as
  // "file: /json/pointer: message".
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  inline constexpr int kFormatVersion = 1;

  // Instance file: {"format": "quivcon", "version": 1, "kind": ..., "field":
  // "Q" | "GF(p)", "id": ..., "payload": {...}}.
  struct Instance {
    std::string           kind;  // quiver | bound_quiver | connection | algebra | bimodule
    std::string           id;
    Field                 field;
    Json                  payload;
    std::filesystem::path path;
  };

  Instance read_instance(std::filesystem::path const& path);
  // Throws ParseError on any schema problem.
  Instance parse_instance(Json const& doc, std::filesystem::path const& path = {});
  Json     envelope(std::string const& kind, std::string const& id, Field const& field,
                    Json payload);
  void     write_json(std::filesystem::path const& path, Json const& doc);

  Json   to_json(Scalar const& s);
  Scalar scalar_from_json(Json const& j, Field const& f, std::string const& where);
  // Sparse {"rows", "cols", "entries": [[i, j, "v"], ...]}.
  Json   to_json(Matrix const& m);
  Matrix matrix_from_json(Json const& j, Field const& f, std::string const& where);

  Json   to_json(Quiver const& q);
  Quiver quiver_from_json(Json const& j, std::string const& where);

  Json        to_json(BoundQuiver const& bq);
  BoundQuiver bound_quiver_from_json(Json const& j, Field const& f, std::string const& where);

  // Blocks keyed "g,h" by vertex name; U as row-major rows of scalars.
  Json             to_json(QuiverConnection const& c);
  QuiverConnection connection_from_json(Json const& j, Field const& f, std::string const& where);

  // Structure constants as [i, j, k, "c"]; quiver data embedded as rad basis
  // rows plus delta matrices when present.
  Json to_json(FiniteDimAlgebra const& a);
  Json to_json(AlgebraWithQuiverData const& a);
  struct LoadedAlgebra {
    FiniteDimAlgebra                     algebra;
    std::optional<AlgebraWithQuiverData> data;
  };
  LoadedAlgebra algebra_from_json(Json const& j, Field const& f, std::string const& where);

  // Algebras referenced by {"id", "file"} relative to the bimodule file.
  struct AlgebraRef {
    std::string id;
    std::string file;
  };
  Json to_json(BimoduleWithQuiverData const& m, AlgebraRef const& left, AlgebraRef const& right);
  // Resolves and loads the referenced algebras (which must carry quiver
  // data) and checks their ids.
  BimoduleWithQuiverData bimodule_from_instance(Instance const& inst);

  // Convenience loaders: read the file and check its kind.
  BoundQuiver           load_bound_quiver(std::filesystem::path const& path);
  QuiverConnection      load_connection(std::filesystem::path const& path);
  AlgebraWithQuiverData load_algebra_with_data(std::filesystem::path const& path);

}  // namespace quivcon

#endif  // QUIVCON_IO_HPP_
