#ifndef CYBEFORGE_SERIALIZE_HPP
#define CYBEFORGE_SERIALIZE_HPP

#include "cybeforge/averaging.hpp"
#include "cybeforge/conformal.hpp"
#include "cybeforge/cybe.hpp"
#include "cybeforge/liealg.hpp"
#include "cybeforge/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace cybeforge {

using nlohmann::json;

json vec_json(const Vec &v);
Vec vec_from_json(const json &j, std::size_t dim);
json matrix_json(const Matrix &m);
Matrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols);

/// Every reader checks the "schema" field and throws ParseError on mismatch.
json lie_algebra_json(const LieAlgebra &g);
LieAlgebra lie_algebra_from_json(const json &j);

json root_datum_json(const RootDatum &rd);
RootDatum root_datum_from_json(const json &j, const LieAlgebra &g);

json conf_ave_op_json(const ConfAveOp &t);
ConfAveOp conf_ave_op_from_json(const json &j);

json homog_spec_json(const HomogeneousSpec &spec);
HomogeneousSpec homog_spec_from_json(const json &j, const RootDatum &rd, std::size_t dim);

json laurent_op_json(const LaurentOp &p);
LaurentOp laurent_op_from_json(const json &j);

json conf_elem_json(const ConfElem &e);
ConfElem conf_elem_from_json(const json &j, std::size_t dim);

/// FNV-1a of the compact dump, as 16 hex digits.
std::string digest(const json &j);

struct RunInfo {
  std::string command;
  json inputs = json::object();
  std::uint64_t seed = 0;
  double timing_ms = 0;
};

json report_json(const Report &rep, const RunInfo &info);

json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const json &j);

} // namespace cybeforge

#endif
