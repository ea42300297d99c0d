#include "cybeforge/serialize.hpp"

#include "cybeforge/errors.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace cybeforge {

namespace {

void expect_schema(const json &j, const std::string &schema) {
  if (!j.is_object() || !j.contains("schema")) {
    throw ParseError("missing schema field, expected " + schema);
  }
  if (j.at("schema") != schema) {
    throw ParseError("unsupported schema " + j.at("schema").dump() + ", expected " + schema);
  }
}

Rat rat_from_json(const json &j) {
  if (!j.is_string()) {
    throw ParseError("rational must be a \"p/q\" string, got " + j.dump());
  }
  return parse_rat(j.get<std::string>());
}

template <class T>
T field(const json &j, const char *name) {
  if (!j.contains(name)) {
    throw ParseError(std::string("missing field ") + name);
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception &e) {
    throw ParseError(std::string("bad field ") + name + ": " + e.what());
  }
}

const json &array_field(const json &j, const char *name) {
  if (!j.contains(name) || !j.at(name).is_array()) {
    throw ParseError(std::string("missing array field ") + name);
  }
  return j.at(name);
}

} // namespace

json vec_json(const Vec &v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(format_rat(v[i]));
  }
  return out;
}

Vec vec_from_json(const json &j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) {
    throw ParseError("expected a vector of length " + std::to_string(dim));
  }
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = rat_from_json(j[i]);
  }
  return v;
}

json matrix_json(const Matrix &m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out.push_back(vec_json(m.row(i)));
  }
  return out;
}

Matrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError("expected a matrix with " + std::to_string(rows) + " rows");
  }
  std::vector<Vec> rs;
  for (const auto &r : j) {
    rs.push_back(vec_from_json(r, cols));
  }
  return Matrix::from_rows(rs, cols);
}

json lie_algebra_json(const LieAlgebra &g) {
  json structure = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      const SparseVec &p = g.product_basis(i, j);
      if (p.empty()) {
        continue;
      }
      json entries = json::array();
      for (const auto &[k, c] : p) {
        entries.push_back({k, format_rat(c)});
      }
      structure.push_back({i, j, entries});
    }
  }
  return {{"schema", "lie-algebra.v1"}, {"dim", g.dim()}, {"labels", g.labels()}, {"structure", structure}};
}

LieAlgebra lie_algebra_from_json(const json &j) {
  expect_schema(j, "lie-algebra.v1");
  auto dim = field<std::size_t>(j, "dim");
  auto labels = field<std::vector<std::string>>(j, "labels");
  if (dim == 0) {
    throw ParseError("dim must be positive");
  }
  if (labels.size() != dim) {
    throw ParseError("labels length does not match dim");
  }
  LieAlgebra g(labels);
  for (const auto &entry : array_field(j, "structure")) {
    if (!entry.is_array() || entry.size() != 3 || !entry[2].is_array()) {
      throw ParseError("structure entries are [i, j, [[k, \"p/q\"], ...]]");
    }
    auto i = entry[0].get<std::size_t>();
    auto k2 = entry[1].get<std::size_t>();
    if (i >= dim || k2 >= dim) {
      throw ParseError("structure index out of range");
    }
    SparseVec v;
    for (const auto &t : entry[2]) {
      if (!t.is_array() || t.size() != 2) {
        throw ParseError("structure coefficient is [k, \"p/q\"]");
      }
      auto k = t[0].get<std::size_t>();
      if (k >= dim) {
        throw ParseError("structure index out of range");
      }
      v.emplace_back(k, rat_from_json(t[1]));
    }
    g.set_product(i, k2, std::move(v));
  }
  return g;
}

json root_datum_json(const RootDatum &rd) {
  json cartan = json::array();
  json roots = json::array();
  json rootvecs = json::array();
  json coroots = json::array();
  for (const auto &h : rd.cartan) {
    cartan.push_back(vec_json(h));
  }
  for (const auto &r : rd.roots) {
    json row = json::array();
    for (const auto &c : r) {
      row.push_back(format_rat(c));
    }
    roots.push_back(row);
  }
  for (const auto &x : rd.root_vectors) {
    rootvecs.push_back(vec_json(x));
  }
  for (const auto &h : rd.coroots) {
    coroots.push_back(vec_json(h));
  }
  return {{"schema", "root-datum.v1"},
          {"cartan", cartan},
          {"roots", roots},
          {"rootvecs", rootvecs},
          {"coroots", coroots}};
}

RootDatum root_datum_from_json(const json &j, const LieAlgebra &g) {
  expect_schema(j, "root-datum.v1");
  const std::size_t dim = g.dim();
  RootDatum rd;
  for (const auto &h : array_field(j, "cartan")) {
    rd.cartan.push_back(vec_from_json(h, dim));
  }
  const std::size_t rank = rd.cartan.size();
  for (const auto &r : array_field(j, "roots")) {
    rd.roots.push_back(vec_from_json(r, rank).coords());
  }
  for (const auto &x : array_field(j, "rootvecs")) {
    rd.root_vectors.push_back(vec_from_json(x, dim));
  }
  if (rd.root_vectors.size() != rd.roots.size()) {
    throw ParseError("rootvecs and roots differ in length");
  }
  // Coroots are recomputed by finalize; the stored ones must agree.
  std::vector<Vec> stored;
  if (j.contains("coroots")) {
    for (const auto &h : array_field(j, "coroots")) {
      stored.push_back(vec_from_json(h, dim));
    }
  }
  try {
    rd.finalize(g);
  } catch (const Error &e) {
    throw ParseError(std::string("inconsistent root datum: ") + e.what());
  }
  if (!stored.empty() && stored != rd.coroots) {
    throw ParseError("stored coroots do not match [x_alpha, x_-alpha]");
  }
  return rd;
}

json conf_ave_op_json(const ConfAveOp &t) {
  json fam = json::array();
  for (const auto &m : t.family()) {
    fam.push_back(matrix_json(m));
  }
  return {{"schema", "conf-ave-op.v1"}, {"N", t.degree()}, {"dim", t.dim()}, {"family", fam}};
}

ConfAveOp conf_ave_op_from_json(const json &j) {
  expect_schema(j, "conf-ave-op.v1");
  const json &fam = array_field(j, "family");
  if (fam.empty() || !fam[0].is_array()) {
    throw ParseError("family must contain at least T_0");
  }
  const std::size_t dim = fam[0].size();
  if (j.contains("dim") && field<std::size_t>(j, "dim") != dim) {
    throw ParseError("dim does not match family matrices");
  }
  std::vector<LinOp> family;
  for (const auto &m : fam) {
    family.push_back(matrix_from_json(m, dim, dim));
  }
  try {
    return ConfAveOp(std::move(family));
  } catch (const RangeError &e) {
    throw ParseError(e.what());
  }
}

json homog_spec_json(const HomogeneousSpec &spec) {
  json xi = json::object();
  for (const auto &[c, v] : spec.xi) {
    xi[std::to_string(c)] = format_rat(v);
  }
  json hperp = json::array();
  for (const auto &m : spec.hperp) {
    hperp.push_back(matrix_json(m));
  }
  return {{"schema", "homog-spec.v1"}, {"subsystem", spec.subsystem.members}, {"xi", xi}, {"hperp", hperp}};
}

HomogeneousSpec homog_spec_from_json(const json &j, const RootDatum &rd, std::size_t dim) {
  expect_schema(j, "homog-spec.v1");
  HomogeneousSpec spec;
  spec.subsystem.members = field<std::vector<std::size_t>>(j, "subsystem");
  for (auto a : spec.subsystem.members) {
    if (a >= rd.size()) {
      throw ParseError("root index out of range");
    }
  }
  std::sort(spec.subsystem.members.begin(), spec.subsystem.members.end());
  spec.subsystem.components = subsystem_components(rd, spec.subsystem.members);
  if (j.contains("xi")) {
    for (const auto &[k, v] : j.at("xi").items()) {
      spec.xi[std::stoul(k)] = rat_from_json(v);
    }
  }
  if (j.contains("hperp")) {
    for (const auto &m : array_field(j, "hperp")) {
      spec.hperp.push_back(matrix_from_json(m, dim, dim));
    }
  }
  return spec;
}

json laurent_op_json(const LaurentOp &p) {
  json coeffs = json::array();
  for (const auto &[k, m] : p.coeffs()) {
    coeffs.push_back({k, matrix_json(m)});
  }
  return {{"schema", "laurent-op.v1"}, {"dim", p.dim()}, {"coeffs", coeffs}};
}

LaurentOp laurent_op_from_json(const json &j) {
  expect_schema(j, "laurent-op.v1");
  auto dim = field<std::size_t>(j, "dim");
  LaurentOp p(dim);
  for (const auto &entry : array_field(j, "coeffs")) {
    if (!entry.is_array() || entry.size() != 2) {
      throw ParseError("coeffs entries are [k, matrix]");
    }
    p.add(entry[0].get<int>(), matrix_from_json(entry[1], dim, dim));
  }
  return p;
}

json conf_elem_json(const ConfElem &e) {
  json terms = json::array();
  for (const auto &[k, a] : e.terms()) {
    terms.push_back({k, vec_json(a)});
  }
  return {{"schema", "conf-elem.v1"}, {"dim", e.dim()}, {"terms", terms}};
}

ConfElem conf_elem_from_json(const json &j, std::size_t dim) {
  expect_schema(j, "conf-elem.v1");
  ConfElem e(dim);
  for (const auto &entry : array_field(j, "terms")) {
    if (!entry.is_array() || entry.size() != 2) {
      throw ParseError("terms entries are [k, coords]");
    }
    e.add_term(entry[0].get<int>(), vec_from_json(entry[1], dim));
  }
  return e;
}

std::string digest(const json &j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json report_json(const Report &rep, const RunInfo &info) {
  return {{"schema", "report.v1"},
          {"command", info.command},
          {"inputs", info.inputs},
          {"digest", digest(info.inputs)},
          {"seed", info.seed},
          {"status", rep.ok() ? "pass" : "fail"},
          {"checks", rep.to_json()},
          {"timing_ms", info.timing_ms}};
}

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string &path, const json &j) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << j.dump(2) << '\n';
}

} // namespace cybeforge
