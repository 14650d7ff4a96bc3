#include "annfit/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace annfit {
namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end())
    throw ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

long int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + name + "\" must be an integer");
  return v.get<long>();
}

std::vector<long> long_array(const Json& v, const char* name) {
  if (!v.is_array())
    throw ParseError(std::string("field \"") + name + "\" must be an array");
  std::vector<long> out;
  for (const Json& e : v) {
    if (!e.is_number_integer())
      throw ParseError(std::string("field \"") + name +
                       "\" must hold integers");
    out.push_back(e.get<long>());
  }
  return out;
}

FiniteAbelianGroup group_field(const Json& j) {
  std::vector<long> factors = long_array(field(j, "group"), "group");
  try {
    return FiniteAbelianGroup(std::move(factors));
  } catch (const BadParameterError& e) {
    throw ParseError(std::string("field \"group\": ") + e.what());
  }
}

bool valid_uint_string(const std::string& s, std::size_t from) {
  if (from >= s.size()) return false;
  for (std::size_t i = from; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_int_string(const std::string& s, const char* where) {
  std::size_t from = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (!valid_uint_string(s, from))
    throw ParseError(std::string(where) + ": \"" + s +
                     "\" is not a decimal integer");
  return Int(s, 10);
}

Rat parse_rat_string(const std::string& s, const char* where) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int_string(s, where));
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_uint_string(den, 0) || den[0] == '0')
    throw ParseError(std::string(where) + ": \"" + s +
                     "\" has a malformed denominator");
  Rat q(parse_int_string(num, where), Int(den, 10));
  q.canonicalize();
  return q;
}

std::vector<std::string> string_array(const Json& v, const char* name) {
  if (!v.is_array())
    throw ParseError(std::string("field \"") + name + "\" must be an array");
  std::vector<std::string> out;
  for (const Json& e : v) {
    if (!e.is_string())
      throw ParseError(std::string("field \"") + name + "\" must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Json group_json(const FiniteAbelianGroup& g) {
  Json a = Json::array();
  for (long d : g.invariant_factors()) a.push_back(d);
  return a;
}

Json element_json(const ZG& x, const std::string& domain) {
  Json j;
  j["group"] = group_json(x.group());
  j["domain"] = domain;
  Json cs = Json::array();
  for (const Int& c : x.coeffs()) cs.push_back(c.get_str());
  j["coeffs"] = std::move(cs);
  return j;
}

Json element_json(const QG& x) {
  Json j;
  j["group"] = group_json(x.group());
  j["domain"] = "rat";
  Json cs = Json::array();
  for (const Rat& c : x.coeffs()) cs.push_back(c.get_str());
  j["coeffs"] = std::move(cs);
  return j;
}

ParsedElement element_from_json(const Json& j) {
  FiniteAbelianGroup g = group_field(j);
  const Json& dom = field(j, "domain");
  if (!dom.is_string()) throw ParseError("field \"domain\" must be a string");
  std::string domain = dom.get<std::string>();
  std::vector<std::string> coeffs =
      string_array(field(j, "coeffs"), "coeffs");
  if (static_cast<long>(coeffs.size()) != g.order()) {
    std::ostringstream msg;
    msg << "field \"coeffs\": expected " << g.order() << " entries, got "
        << coeffs.size();
    throw ParseError(msg.str());
  }

  ParsedElement out{domain, std::nullopt, std::nullopt};
  if (domain == "int") {
    std::vector<Int> cs;
    cs.reserve(coeffs.size());
    for (const std::string& s : coeffs)
      cs.push_back(parse_int_string(s, "coeffs"));
    out.integral = ZG(g, std::move(cs));
    return out;
  }
  if (domain == "rat") {
    std::vector<Rat> cs;
    cs.reserve(coeffs.size());
    for (const std::string& s : coeffs)
      cs.push_back(parse_rat_string(s, "coeffs"));
    out.rational = QG(g, std::move(cs));
    return out;
  }
  if (domain.rfind("mod:", 0) == 0) {
    std::string spec = domain.substr(4);
    std::size_t caret = spec.find('^');
    if (caret == std::string::npos)
      throw ParseError("field \"domain\": want \"mod:l^N\", got \"" + domain +
                       "\"");
    std::string lpart = spec.substr(0, caret);
    std::string npart = spec.substr(caret + 1);
    if (!valid_uint_string(lpart, 0) || !valid_uint_string(npart, 0))
      throw ParseError("field \"domain\": want \"mod:l^N\", got \"" + domain +
                       "\"");
    long l = std::stol(lpart);
    long n = std::stol(npart);
    if (l < 2 || n < 1)
      throw ParseError("field \"domain\": modulus needs l >= 2, N >= 1");
    Int modulus = pow_l(l, n);
    std::vector<Int> cs;
    cs.reserve(coeffs.size());
    for (const std::string& s : coeffs) {
      Int c = parse_int_string(s, "coeffs");
      if (c < 0 || c >= modulus)
        throw ParseError("field \"coeffs\": residue " + s +
                         " out of range for " + domain);
      cs.push_back(std::move(c));
    }
    out.integral = ZG(g, std::move(cs));
    return out;
  }
  throw ParseError("field \"domain\": unknown tag \"" + domain + "\"");
}

template <class S>
Json matrix_json(const GroupRingMatrix<S>& a, const FiniteAbelianGroup& g) {
  Json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  Json rows = Json::array();
  for (long r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (long c = 0; c < a.cols(); ++c) {
      if (a.at(r, c).group() != g)
        throw BadParameterError("matrix entry over a different group");
      if constexpr (std::is_same_v<S, Int>)
        row.push_back(element_json(a.at(r, c), "int"));
      else
        row.push_back(element_json(a.at(r, c)));
    }
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

ZGMatrix int_matrix_from_json(const Json& j, const FiniteAbelianGroup& g) {
  long rows = int_field(j, "rows");
  long cols = int_field(j, "cols");
  if (rows < 0 || cols < 0)
    throw ParseError("field \"rows\"/\"cols\" must be nonnegative");
  const Json& entries = field(j, "entries");
  if (!entries.is_array() || static_cast<long>(entries.size()) != rows)
    throw ParseError("field \"entries\": expected one array per row");
  ZGMatrix m = zero_gr_matrix<Int>(g, rows, cols);
  for (long r = 0; r < rows; ++r) {
    const Json& row = entries[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      throw ParseError("field \"entries\": row length != cols");
    for (long c = 0; c < cols; ++c) {
      ParsedElement e = element_from_json(row[static_cast<std::size_t>(c)]);
      if (e.domain != "int" || !e.integral)
        throw ParseError("field \"entries\": matrix entries must be \"int\"");
      if (e.integral->group() != g)
        throw ParseError("field \"entries\": entry over a different group");
      m.at(r, c) = std::move(*e.integral);
    }
  }
  return m;
}

Json int_matrix_json(const IntMatrix& a) {
  Json rows = Json::array();
  for (long r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (long c = 0; c < a.cols(); ++c) row.push_back(a.at(r, c).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix int_matrix_from_string_rows(const Json& v, long rows, long cols,
                                      const char* name) {
  if (!v.is_array() || static_cast<long>(v.size()) != rows)
    throw ParseError(std::string("field \"") + name + "\": expected " +
                     std::to_string(rows) + " rows");
  IntMatrix m(rows, cols, Int(0));
  for (long r = 0; r < rows; ++r) {
    std::vector<std::string> row =
        string_array(v[static_cast<std::size_t>(r)], name);
    if (static_cast<long>(row.size()) != cols)
      throw ParseError(std::string("field \"") + name +
                       "\": row length != " + std::to_string(cols));
    for (long c = 0; c < cols; ++c)
      m.at(r, c) = parse_int_string(row[static_cast<std::size_t>(c)], name);
  }
  return m;
}

}  // namespace

std::string serialize_element(const ZG& x) {
  return dump(element_json(x, "int"));
}

std::string serialize_element(const QG& x) { return dump(element_json(x)); }

std::string serialize_element_mod(const ZG& x, long l, long n) {
  if (l < 2 || n < 1) throw BadParameterError("modular domain needs l^N >= 2");
  Int modulus = pow_l(l, n);
  ZG reduced(x.group());
  for (long g = 0; g < x.group().order(); ++g)
    reduced.coeff(g) = mod_reduce(x.coeff(g), modulus);
  std::ostringstream tag;
  tag << "mod:" << l << "^" << n;
  return dump(element_json(reduced, tag.str()));
}

ParsedElement parse_element(const std::string& text) {
  return element_from_json(parse_json(text));
}

ZG parse_int_element(const std::string& text) {
  ParsedElement e = parse_element(text);
  if (e.domain != "int" || !e.integral)
    throw ParseError("field \"domain\": expected \"int\", got \"" + e.domain +
                     "\"");
  return std::move(*e.integral);
}

QG parse_rat_element(const std::string& text) {
  ParsedElement e = parse_element(text);
  if (e.domain != "rat" || !e.rational)
    throw ParseError("field \"domain\": expected \"rat\", got \"" + e.domain +
                     "\"");
  return std::move(*e.rational);
}

std::string serialize_matrix(const ZGMatrix& a, const FiniteAbelianGroup& g) {
  return dump(matrix_json(a, g));
}

std::string serialize_matrix(const QGMatrix& a, const FiniteAbelianGroup& g) {
  return dump(matrix_json(a, g));
}

ZGMatrix parse_int_matrix(const std::string& text,
                          FiniteAbelianGroup& group_out) {
  Json j = parse_json(text);
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("field \"entries\" must be an array");
  // The group is read off the first entry; empty matrices keep the trivial
  // group, which the caller can override.
  FiniteAbelianGroup g;
  if (!entries.empty() && entries[0].is_array() && !entries[0].empty())
    g = group_field(entries[0][0]);
  ZGMatrix m = int_matrix_from_json(j, g);
  group_out = g;
  return m;
}

std::string serialize_module(const ConcreteModule& m) {
  Json j;
  j["group"] = group_json(m.group());
  j["l"] = m.l();
  Json factors = Json::array();
  for (long e : m.factors()) factors.push_back(e);
  j["factors"] = std::move(factors);
  Json actions = Json::array();
  for (const IntMatrix& a : m.generator_actions())
    actions.push_back(int_matrix_json(a));
  j["actions"] = std::move(actions);
  return dump(j);
}

ConcreteModule parse_module(const std::string& text) {
  Json j = parse_json(text);
  FiniteAbelianGroup g = group_field(j);
  long l = int_field(j, "l");
  if (l < 2) throw ParseError("field \"l\" must be at least 2");
  std::vector<long> factors = long_array(field(j, "factors"), "factors");
  long k = static_cast<long>(factors.size());
  const Json& actions = field(j, "actions");
  if (!actions.is_array() || actions.size() != g.rank())
    throw ParseError("field \"actions\": expected one matrix per generator");
  std::vector<IntMatrix> mats;
  for (const Json& a : actions)
    mats.push_back(int_matrix_from_string_rows(a, k, k, "actions"));
  return ConcreteModule(std::move(g), l, std::move(factors), std::move(mats));
}

std::string serialize_complex(const PerfectComplex& c) {
  Json j;
  j["group"] = group_json(c.group);
  j["l"] = c.l;
  Json ranks = Json::array();
  for (long r : c.ranks) ranks.push_back(r);
  j["ranks"] = std::move(ranks);
  Json diffs = Json::array();
  for (const ZGMatrix& d : c.differentials)
    diffs.push_back(matrix_json(d, c.group));
  j["differentials"] = std::move(diffs);
  return dump(j);
}

PerfectComplex parse_complex(const std::string& text) {
  Json j = parse_json(text);
  FiniteAbelianGroup g = group_field(j);
  long l = int_field(j, "l");
  std::vector<long> ranks = long_array(field(j, "ranks"), "ranks");
  if (ranks.empty()) throw ParseError("field \"ranks\" must be nonempty");
  const Json& diffs = field(j, "differentials");
  if (!diffs.is_array() || diffs.size() + 1 != ranks.size())
    throw ParseError("field \"differentials\": expected ranks-1 matrices");
  PerfectComplex c{g, l, std::move(ranks), {}};
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    ZGMatrix d = int_matrix_from_json(diffs[i], g);
    if (d.rows() != c.ranks[i] || d.cols() != c.ranks[i + 1])
      throw ParseError("field \"differentials\": matrix " + std::to_string(i) +
                       " does not match ranks");
    c.differentials.push_back(std::move(d));
  }
  check_complex_structure(c);
  return c;
}

std::string serialize_ideal(const IdealHandle& h) {
  Json j;
  j["group"] = group_json(h.group());
  j["l"] = h.l();
  j["precision"] = h.precision();
  Json gens = Json::array();
  for (const ZG& x : h.generators()) gens.push_back(element_json(x, "int"));
  j["generators"] = std::move(gens);
  return dump(j);
}

IdealHandle parse_ideal(const std::string& text, long guard) {
  Json j = parse_json(text);
  FiniteAbelianGroup g = group_field(j);
  long l = int_field(j, "l");
  long precision = int_field(j, "precision");
  const Json& gens = field(j, "generators");
  if (!gens.is_array())
    throw ParseError("field \"generators\" must be an array");
  std::vector<ZG> xs;
  for (const Json& e : gens) {
    ParsedElement p = element_from_json(e);
    if (p.domain != "int" || !p.integral)
      throw ParseError("field \"generators\": entries must be \"int\"");
    if (p.integral->group() != g)
      throw ParseError("field \"generators\": entry over a different group");
    xs.push_back(std::move(*p.integral));
  }
  return IdealHandle(std::move(g), l, precision, std::move(xs), guard);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw ParseError("short write to " + path);
}

}  // namespace annfit
