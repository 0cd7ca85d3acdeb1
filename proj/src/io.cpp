#include "pfid/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "pfid/error.hpp"

namespace pfid {

namespace {

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(level * indent), ' ');
  };
  // Arrays holding only scalars stay on one line even in pretty mode.
  auto scalar_array = [](const Json& a) {
    for (const auto& e : a) {
      if (e.is_structured()) return false;
    }
    return true;
  };

  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_elems = scalar_array(j);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += pretty && inline_elems ? ", " : ",";
        first = false;
        if (!inline_elems) newline(depth + 1);
        dump_into(e, indent, depth + 1, out);
      }
      if (!inline_elems) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(fmt::format("missing field \"{}\"", key));
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(fmt::format("{} must be a number", what));
  return j.get<double>();
}

std::size_t positive_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) parse_error(fmt::format("{} must be a positive integer", what));
  return j.get<std::size_t>();
}

RealVector real_rows(const Json& rows, std::size_t dim, const char* what, Eigen::Index row) {
  const Json& r = rows.at(static_cast<std::size_t>(row));
  if (!r.is_array() || r.size() != dim) parse_error(fmt::format("{} row {} must have {} entries", what, row, dim));
  RealVector out(static_cast<Eigen::Index>(dim));
  for (std::size_t c = 0; c < dim; ++c) out[static_cast<Eigen::Index>(c)] = number(r[c], what);
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  std::string s = fmt::format("{:.17g}", x);
  // Keep integral values recognisable as floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error(fmt::format("cannot open {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, fmt::format("cannot write {}", path));
  out << text;
  if (!out) throw Error(ErrorCode::Parse, fmt::format("failed writing {}", path));
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  Json out;
  out["dim"] = m.rows();
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t dim = positive_int(field(j, "dim"), "dim");
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (!re.is_array() || re.size() != dim) parse_error(fmt::format("\"re\" must have {} rows", dim));
  if (!im.is_array() || im.size() != dim) parse_error(fmt::format("\"im\" must have {} rows", dim));
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const RealVector r = real_rows(re, dim, "re", i);
    const RealVector c = real_rows(im, dim, "im", i);
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = Complex(r[k], c[k]);
  }
  return m;
}

Json distribution_to_json(const ProbabilityDistribution& p) {
  Json out;
  out["probs"] = p.probs();
  return out;
}

ProbabilityDistribution distribution_from_json(const Json& j) {
  const Json& probs = field(j, "probs");
  if (!probs.is_array()) parse_error("\"probs\" must be an array");
  std::vector<double> values;
  for (const auto& p : probs) values.push_back(number(p, "probability"));
  return ProbabilityDistribution(std::move(values));
}

Json povm_to_json(const Povm& povm) {
  Json elements = Json::array();
  for (const auto& e : povm.elements()) elements.push_back(matrix_to_json(e));
  Json out;
  out["dim"] = povm.dim();
  out["elements"] = std::move(elements);
  return out;
}

Povm povm_from_json(const Json& j) {
  const std::size_t dim = positive_int(field(j, "dim"), "dim");
  const Json& elements = field(j, "elements");
  if (!elements.is_array() || elements.empty()) parse_error("\"elements\" must be a non-empty array");
  std::vector<ComplexMatrix> mats;
  for (const auto& e : elements) {
    mats.push_back(matrix_from_json(e));
    if (static_cast<std::size_t>(mats.back().rows()) != dim) {
      throw Error(ErrorCode::DimensionMismatch, "POVM element dimension differs from \"dim\"");
    }
  }
  return Povm(std::move(mats));
}

Json channel_to_json(const Channel& ch) {
  Json out;
  if (const auto* env = std::get_if<EnvRepChannel>(&ch)) {
    out["kind"] = "env";
    out["dim_a"] = env->dim_a();
    out["dim_e"] = env->dim_e();
    out["unitary"] = matrix_to_json(env->unitary());
    out["env_state"] = matrix_to_json(env->env_state().matrix());
    return out;
  }
  const auto& kraus = std::get<KrausChannel>(ch);
  Json ops = Json::array();
  for (const auto& k : kraus.operators()) ops.push_back(matrix_to_json(k));
  out["kind"] = "kraus";
  out["dim"] = kraus.dim();
  out["operators"] = std::move(ops);
  return out;
}

Channel channel_from_json(const Json& j) {
  const Json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) parse_error("\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "kraus") {
    const std::size_t dim = positive_int(field(j, "dim"), "dim");
    const Json& ops = field(j, "operators");
    if (!ops.is_array() || ops.empty()) parse_error("\"operators\" must be a non-empty array");
    std::vector<ComplexMatrix> mats;
    for (const auto& op : ops) {
      mats.push_back(matrix_from_json(op));
      if (static_cast<std::size_t>(mats.back().rows()) != dim) {
        throw Error(ErrorCode::DimensionMismatch, "Kraus operator dimension differs from \"dim\"");
      }
    }
    return KrausChannel(std::move(mats));
  }
  if (kind == "env") {
    const std::size_t dim_a = positive_int(field(j, "dim_a"), "dim_a");
    const std::size_t dim_e = positive_int(field(j, "dim_e"), "dim_e");
    return EnvRepChannel(dim_a, dim_e, matrix_from_json(field(j, "unitary")),
                         validate_density(matrix_from_json(field(j, "env_state"))));
  }
  if (kind == "named") {
    const Json& name_field = field(j, "name");
    if (!name_field.is_string()) parse_error("\"name\" must be a string");
    const std::string name = name_field.get<std::string>();
    if (name == "amplitude-damping") return amplitude_damping(number(field(j, "gamma"), "gamma"));
    if (name == "depolarizing") return depolarizing(number(field(j, "p"), "p"));
    if (name == "phase-damping") return phase_damping(number(field(j, "lambda"), "lambda"));
    parse_error(fmt::format("unknown named channel \"{}\"", name));
  }
  parse_error(fmt::format("unknown channel kind \"{}\"", kind));
}

}  // namespace pfid
