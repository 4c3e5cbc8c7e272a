#include "lfin/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "lfin/errors.hpp"

namespace lfin {

using nlohmann::json;

std::string group_descriptor(const GroupTable& g) {
  if (!g.descriptor().empty()) return g.descriptor();
  std::string s = "table:{";
  const auto t = g.table();
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (r > 0) s += ";";
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      if (c > 0) s += " ";
      s += std::to_string(t[r][c]);
    }
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// Writing

namespace {

void write_rows(std::ostream& out, const GroupRingMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << '[';
      for (std::size_t g = 0; g < m.order(); ++g) {
        if (g > 0) out << ',';
        out << m.coeff(r, c, g);
      }
      out << ']';
    }
    out << '\n';
  }
}

void write_body(std::ostream& out, const ChainComplex& c) {
  out << "ranks";
  for (auto r : c.ranks()) out << ' ' << r;
  out << '\n';
  for (int q = c.bottom() + 1; q <= c.top(); ++q) {
    out << "boundary " << q << '\n';
    write_rows(out, c.boundary(q));
  }
  out << "end\n";
}

}  // namespace

std::string write_complex(const ChainComplex& c) {
  std::ostringstream out;
  out << "complex v1\n";
  out << "group " << group_descriptor(c.table()) << '\n';
  out << "prime " << c.prime() << '\n';
  out << "bottom " << c.bottom() << '\n';
  write_body(out, c);
  return out.str();
}

std::string write_tower(const Tower& t) {
  std::ostringstream out;
  out << "tower v1\n";
  out << "group " << group_descriptor(t.table()) << '\n';
  out << "prime " << t.prime() << '\n';
  out << "degrees " << t.low() << ' ' << t.high() << '\n';
  out << "levels " << t.size() << '\n';
  for (std::size_t n = 0; n < t.size(); ++n) {
    out << "level " << n << '\n';
    write_body(out, t.level(n));
  }
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    out << "bond " << n << '\n';
    for (int q = t.low(); q <= t.high(); ++q) {
      out << "map " << q << '\n';
      write_rows(out, t.bond(n).component(q));
    }
    out << "end\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Reading

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::string text;
  std::vector<Token> tokens;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t number = 0, start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find('\n', start), text.size());
      ++number;
      std::string raw(text.substr(start, end - start));
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      Line line{number, raw, tokenize(raw)};
      if (!line.tokens.empty() && line.tokens[0].text[0] != '#') lines_.push_back(std::move(line));
      last_ = number;
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  bool done() const { return pos_ >= lines_.size(); }

  const Line& next() {
    if (done()) throw ParseError(last_, 1, "unexpected end of input");
    return lines_[pos_++];
  }

  // A line "keyword args..."; returns it after checking the keyword.
  const Line& expect(const std::string& keyword, std::size_t args) {
    const Line& l = next();
    if (l.tokens[0].text != keyword) throw ParseError(l.number, l.tokens[0].column, "expected '" + keyword + "'");
    if (args != npos && l.tokens.size() != args + 1)
      throw ParseError(l.number, l.tokens.back().column,
                       "'" + keyword + "' takes " + std::to_string(args) + " argument" + (args == 1 ? "" : "s"));
    return l;
  }

  static constexpr std::size_t npos = std::size_t(-1);

 private:
  static std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) break;
      const std::size_t start = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({s.substr(start, i - start), start + 1});
    }
    return out;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_ = 0;
};

long long parse_integer(const Line& l, const Token& t) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(l.number, t.column, "expected an integer, got '" + t.text + "'");
  }
}

std::size_t parse_count(const Line& l, const Token& t) {
  const long long v = parse_integer(l, t);
  if (v < 0) throw ParseError(l.number, t.column, "expected a nonnegative integer");
  return std::size_t(v);
}

// Everything after the keyword, for descriptors that may contain spaces.
std::string rest_of_line(const Line& l) {
  if (l.tokens.size() < 2) throw ParseError(l.number, l.text.size() + 1, "missing argument");
  std::string s = l.text.substr(l.tokens[1].column - 1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

// One row of bracket groups.
void parse_row(const Line& l, GroupRingMatrix& m, std::size_t row, const GroupTable& g) {
  const std::string& s = l.text;
  std::size_t i = 0, col = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto fail = [&](const std::string& what) { throw ParseError(l.number, i + 1, what); };
  for (;;) {
    skip();
    if (i >= s.size()) break;
    if (s[i] != '[') fail("expected '['");
    if (col >= m.cols()) fail("too many entries in row (expected " + std::to_string(m.cols()) + ")");
    ++i;
    std::size_t k = 0;
    for (;;) {
      skip();
      const std::size_t start = i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) {
        i = start;
        fail("expected a coefficient");
      }
      if (k >= g.order()) {
        i = start;
        fail("too many coefficients (group order " + std::to_string(g.order()) + ")");
      }
      m.coeff(row, col, k++) = fl_reduce(std::stoll(s.substr(start, i - start)), g.prime());
      skip();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ']') {
        ++i;
        break;
      }
      fail("expected ',' or ']'");
    }
    if (k != g.order()) fail("expected " + std::to_string(g.order()) + " coefficients, got " + std::to_string(k));
    ++col;
  }
  if (col != m.cols()) throw ParseError(l.number, s.size() + 1, "expected " + std::to_string(m.cols()) + " entries, got " + std::to_string(col));
}

GroupRingMatrix read_matrix(Reader& in, std::size_t rows, std::size_t cols, const GroupTable& g) {
  GroupRingMatrix m(rows, cols, g);
  if (rows == 0 || cols == 0) return m;
  for (std::size_t r = 0; r < rows; ++r) parse_row(in.next(), m, r, g);
  return m;
}

void expect_index(const Line& l, long long want) {
  if (parse_integer(l, l.tokens[1]) != want)
    throw ParseError(l.number, l.tokens[1].column, "expected " + l.tokens[0].text + " " + std::to_string(want));
}

struct Header {
  GroupPtr group;
};

GroupPtr read_group(Reader& in) {
  const Line& gl = in.expect("group", Reader::npos);
  const std::string desc = rest_of_line(gl);
  const Line& pl = in.expect("prime", 1);
  const long long p = parse_integer(pl, pl.tokens[1]);
  if (p < 2) throw ParseError(pl.number, pl.tokens[1].column, "prime must be at least 2");
  return build_group(desc, Fl(p));
}

ChainComplex read_body(Reader& in, const GroupPtr& group, int bottom, std::optional<std::size_t> degrees) {
  const Line& rl = in.expect("ranks", Reader::npos);
  std::vector<std::size_t> ranks;
  for (std::size_t i = 1; i < rl.tokens.size(); ++i) ranks.push_back(parse_count(rl, rl.tokens[i]));
  if (degrees && ranks.size() != *degrees)
    throw ParseError(rl.number, 1, "expected " + std::to_string(*degrees) + " ranks, got " + std::to_string(ranks.size()));
  std::vector<GroupRingMatrix> d;
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    expect_index(in.expect("boundary", 1), bottom + int(i));
    d.push_back(read_matrix(in, ranks[i - 1], ranks[i], *group));
  }
  in.expect("end", 0);
  return ChainComplex(group, bottom, std::move(ranks), std::move(d));
}

void expect_done(Reader& in) {
  if (!in.done()) {
    const Line& l = in.next();
    throw ParseError(l.number, 1, "unexpected content after 'end'");
  }
}

void expect_magic(Reader& in, const std::string& kind) {
  const Line& l = in.expect(kind, 1);
  if (l.tokens[1].text != "v1") throw ParseError(l.number, l.tokens[1].column, "unsupported version '" + l.tokens[1].text + "'");
}

}  // namespace

ChainComplex read_complex(std::string_view text) {
  Reader in(text);
  expect_magic(in, "complex");
  const GroupPtr group = read_group(in);
  const Line& bl = in.expect("bottom", 1);
  const int bottom = int(parse_integer(bl, bl.tokens[1]));
  ChainComplex c = read_body(in, group, bottom, std::nullopt);
  expect_done(in);
  return c;
}

Tower read_tower(std::string_view text) {
  Reader in(text);
  expect_magic(in, "tower");
  const GroupPtr group = read_group(in);
  const Line& dl = in.expect("degrees", 2);
  const int lo = int(parse_integer(dl, dl.tokens[1]));
  const int hi = int(parse_integer(dl, dl.tokens[2]));
  if (hi < lo) throw ParseError(dl.number, dl.tokens[2].column, "empty degree range");
  const Line& ll = in.expect("levels", 1);
  const std::size_t count = parse_count(ll, ll.tokens[1]);
  if (count == 0) throw ParseError(ll.number, ll.tokens[1].column, "a tower needs at least one level");
  std::vector<ChainComplex> levels;
  for (std::size_t n = 0; n < count; ++n) {
    expect_index(in.expect("level", 1), (long long)n);
    levels.push_back(read_body(in, group, lo, std::size_t(hi - lo + 1)));
  }
  std::vector<ChainMap> bonds;
  for (std::size_t n = 0; n + 1 < count; ++n) {
    expect_index(in.expect("bond", 1), (long long)n);
    std::vector<GroupRingMatrix> comps;
    for (int q = lo; q <= hi; ++q) {
      expect_index(in.expect("map", 1), q);
      comps.push_back(read_matrix(in, levels[n].rank(q), levels[n + 1].rank(q), *group));
    }
    in.expect("end", 0);
    bonds.emplace_back(levels[n + 1], levels[n], lo, std::move(comps));
  }
  expect_done(in);
  return Tower(group, lo, hi, std::move(levels), std::move(bonds));
}

IntMatrix parse_int_matrix(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.byte, "malformed integer matrix");
  }
  if (!j.is_array()) throw ParseError(1, 1, "integer matrix must be a list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(1, 1, "row " + std::to_string(r) + " must be a list of " + std::to_string(cols) + " integers");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      if (e.is_number_integer())
        m(r, c) = mpz_class(e.dump());
      else if (e.is_string())
        try {
          m(r, c) = mpz_class(e.get<std::string>());
        } catch (const std::exception&) {
          throw ParseError(1, 1, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not an integer");
        }
      else
        throw ParseError(1, 1, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not an integer");
    }
  }
  return m;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const FlMatrix& m) { return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}}; }

FlMatrix fl_matrix_from_json(const json& j, Fl prime) {
  FlMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), prime);
  const auto data = j.at("data").get<std::vector<long long>>();
  if (data.size() != m.rows() * m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix data has the wrong length");
  for (std::size_t i = 0; i < data.size(); ++i) m(i / std::max<std::size_t>(m.cols(), 1), i % std::max<std::size_t>(m.cols(), 1)) = fl_reduce(data[i], prime);
  return m;
}

json to_json(const GroupRingMatrix& m) {
  std::vector<Fl> data;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (std::size_t g = 0; g < m.order(); ++g) data.push_back(m.coeff(r, c, g));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

GroupRingMatrix ga_matrix_from_json(const json& j, const GroupTable& g) {
  GroupRingMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), g);
  const auto data = j.at("data").get<std::vector<long long>>();
  if (data.size() != m.rows() * m.cols() * g.order())
    throw Error(ErrorCode::DimensionMismatch, "matrix data has the wrong length");
  std::size_t i = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (std::size_t k = 0; k < g.order(); ++k) m.coeff(r, c, k) = fl_reduce(data[i++], g.prime());
  return m;
}

json to_json(const IntMatrix& m) {
  std::vector<std::string> data;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(m(r, c).get_str());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

IntMatrix int_matrix_from_json(const json& j) {
  IntMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto data = j.at("data").get<std::vector<std::string>>();
  if (data.size() != m.rows() * m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix data has the wrong length");
  std::size_t i = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = mpz_class(data[i++]);
  return m;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

json header(const std::string& kind, const std::string& input) {
  return {{"kind", kind}, {"version", 1}, {"input", input}, {"digest", digest(input)}};
}

json map_components(const ModuleChainMap& f, int lo, int hi) {
  json comps = json::array();
  for (int q = lo; q <= hi; ++q) comps.push_back(to_json(f.component(q)));
  return comps;
}

// Verdict and witness relative to the complex that was decided.
void add_verdict(json& cert, const PerfectnessVerdict& v) {
  json verdict = {{"perfect", v.perfect},
                  {"top_degree", v.top_degree ? json(*v.top_degree) : json(nullptr)},
                  {"euler_class", v.euler_class ? json(*v.euler_class) : json(nullptr)},
                  {"obstruction_dim", v.top_obstruction.dim()},
                  {"obstruction_minimal_generators", minimal_generators(v.top_obstruction)}};
  json witness;
  if (v.perfect) {
    const ChainComplex& r = *v.replacement;
    const int lo = std::min(r.bottom(), v.witness->target().bottom());
    const int hi = std::max(r.top(), v.witness->target().top());
    witness = {{"replacement", write_complex(r)}, {"first", lo}, {"components", map_components(*v.witness, lo, hi)}};
  } else {
    const FreeApproximation& a = *v.approximation;
    const int lo = std::min(a.free.bottom(), a.map.target().bottom());
    const int hi = std::max(a.free.top(), a.map.target().top());
    witness = {{"approximation", write_complex(a.free)},
               {"first", lo},
               {"components", map_components(a.map, lo, hi)},
               {"top_degree", a.top_degree}};
  }
  cert["verdict"] = verdict;
  cert["witness"] = witness;
}

struct Reject {
  std::string reason;
};

void require(bool ok, const std::string& reason) {
  if (!ok) throw Reject{reason};
}

std::vector<FlMatrix> read_components(const json& w, Fl p) {
  std::vector<FlMatrix> comps;
  for (const auto& c : w.at("components")) comps.push_back(fl_matrix_from_json(c, p));
  return comps;
}

// Checks a perfectness verdict for `target` from its witness alone.
void verify_verdict(const ModuleComplex& target, const json& verdict, const json& w) {
  const Fl p = target.prime();
  const bool perfect = verdict.at("perfect").get<bool>();
  if (perfect) {
    const ChainComplex r = read_complex(w.at("replacement").get<std::string>());
    require(same_group(r.group(), target.group()), "replacement is over a different group");
    const ModuleChainMap f(as_module_complex(r), target, w.at("first").get<int>(), read_components(w, p));
    require(is_quasi_iso(f), "witness is not a quasi-isomorphism");
    require(is_minimal(r), "replacement is not minimal");
    require(verdict.at("euler_class").get<long>() == euler_characteristic(r), "euler class does not match the replacement");
    return;
  }
  const ChainComplex a = read_complex(w.at("approximation").get<std::string>());
  require(same_group(a.group(), target.group()), "approximation is over a different group");
  const int m = w.at("top_degree").get<int>();
  const ModuleChainMap f(as_module_complex(a), target, w.at("first").get<int>(), read_components(w, p));
  const ModuleComplex cone = mapping_cone(f);
  const auto dims = homology_dims(cone);
  for (std::size_t i = 0; i < dims.size(); ++i)
    require(dims[i] == 0 || cone.bottom() + int(i) == m, "cone homology is not concentrated in the top degree");
  const PiModule obstruction = homology(cone, m);
  require(obstruction.dim() == verdict.at("obstruction_dim").get<std::size_t>(), "obstruction dimension does not match");
  require(!is_free(obstruction).free, "obstruction module is free");
}

void verify_perfectness(const json& cert) {
  const ChainComplex input = read_complex(cert.at("input").get<std::string>());
  verify_verdict(as_module_complex(input), cert.at("verdict"), cert.at("witness"));
}

void verify_quasi_iso(const json& cert) {
  const ChainComplex input = read_complex(cert.at("input").get<std::string>());
  const json& w = cert.at("witness");
  const ChainComplex minimal = read_complex(w.at("minimal").get<std::string>());
  std::vector<GroupRingMatrix> comps;
  for (const auto& c : w.at("components")) comps.push_back(ga_matrix_from_json(c, input.table()));
  const ChainMap f(minimal, input, w.at("first").get<int>(), std::move(comps));
  require(is_quasi_iso(f), "witness is not a quasi-isomorphism");
  require(is_minimal(minimal), "minimal model has a unit boundary entry");
}

void verify_limit(const json& cert) {
  const Tower t = read_tower(cert.at("input").get<std::string>());
  const json& w = cert.at("witness");
  const std::size_t n = w.at("level").get<std::size_t>();
  const std::size_t h = w.at("horizon").get<std::size_t>();
  require(n + h + 2 < t.size(), "witness level is outside the tower");
  std::vector<FlMatrix> bases;
  for (const auto& b : w.at("bases")) bases.push_back(fl_matrix_from_json(b, t.prime()));
  require(!bases.empty() && t.low() + int(bases.size()) - 1 <= t.high(), "wrong number of stable image bases");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const int q = t.low() + int(i);
    const FlMatrix img = t.composite(q, n, h);
    const std::size_t dim = bases[i].cols();
    require(rank(bases[i]) == dim, "stable image basis is not independent");
    require(rank(img) == dim && column_space_contains(img, bases[i]), "basis does not span the image");
    require(rank(t.composite(q, n, h + 1)) == dim, "image is not stable at this horizon");
    require(rank(t.composite(q, n + 1, h)) == dim && rank(t.composite(q, n + 1, h + 1)) == dim,
            "bond does not restrict to an isomorphism of stable images");
  }
  ModuleComplex limit = stable_image_complex(t, n, bases);
  const json& bound = cert.at("verdict").at("homology_bound");
  if (!bound.is_null()) limit = good_truncation(limit, bound.get<int>());
  verify_verdict(limit, cert.at("verdict"), w.at("verdict_witness"));
}

void verify_completion(const json& cert) {
  const json& w = cert.at("witness");
  const IntMatrix m = int_matrix_from_json(w.at("matrix"));
  const IntMatrix u = int_matrix_from_json(w.at("U"));
  const IntMatrix v = int_matrix_from_json(w.at("V"));
  const IntMatrix d = int_matrix_from_json(w.at("D"));
  require(u.rows() == m.rows() && v.rows() == m.cols(), "transformation shapes do not match");
  require(is_unimodular(u) && is_unimodular(v), "transformations are not unimodular");
  require(u * m * v == d, "U * M * V != D");
  std::vector<mpz_class> diag;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j) require(d(i, j) == 0, "D is not diagonal");
    }
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) diag.push_back(d(i, i));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    require(diag[i] > 0 && d(i, i) == diag[i], "nonzero invariant factors must come first and be positive");
    if (i > 0) require(mpz_divisible_p(diag[i].get_mpz_t(), diag[i - 1].get_mpz_t()) != 0, "divisibility chain fails");
  }
  std::vector<std::string> stated = cert.at("verdict").at("invariant_factors").get<std::vector<std::string>>();
  std::vector<std::string> actual;
  for (auto& x : diag) actual.push_back(x.get_str());
  require(stated == actual, "stated invariant factors do not match D");
  const json& l = cert.at("verdict").at("l");
  if (l.is_null()) return;
  // Read the completion off D: generators without a relation are free.
  std::vector<mpz_class> torsion;
  for (auto& x : diag)
    if (x > 1) torsion.push_back(x);
  const FGZlModule z = l_complete(FGAbelian::from_invariants(m.cols() - diag.size(), torsion), l.get<unsigned long>());
  require(z.to_string() == cert.at("verdict").at("completion").get<std::string>(), "stated completion does not match D");
}

}  // namespace

json perfectness_certificate(const ChainComplex& input, const PerfectnessVerdict& v) {
  json cert = header("perfectness", write_complex(input));
  add_verdict(cert, v);
  return cert;
}

json quasi_iso_certificate(const ChainComplex& input, const MinimalModel& model) {
  json cert = header("quasi-iso", write_complex(input));
  const ChainMap& f = model.witness;
  const int lo = std::min(model.complex.bottom(), input.bottom());
  const int hi = std::max(model.complex.top(), input.top());
  json comps = json::array();
  for (int q = lo; q <= hi; ++q) comps.push_back(to_json(f.component(q)));
  cert["verdict"] = {{"quasi_iso", true}, {"minimal_ranks", model.complex.ranks()}};
  cert["witness"] = {{"minimal", write_complex(model.complex)}, {"first", lo}, {"components", comps}};
  return cert;
}

json limit_certificate(const Tower& t, const TowerLimit& limit, std::optional<int> homology_bound,
                       const PerfectnessVerdict& v) {
  json cert = header("limit", write_tower(t));
  json inner;
  add_verdict(inner, v);
  cert["verdict"] = inner["verdict"];
  cert["verdict"]["homology_bound"] = homology_bound ? json(*homology_bound) : json(nullptr);
  json bases = json::array();
  for (const auto& b : limit.inclusions) bases.push_back(to_json(b));
  cert["witness"] = {{"level", limit.level}, {"horizon", limit.horizon}, {"bases", bases}, {"verdict_witness", inner["witness"]}};
  return cert;
}

namespace {

json smith_witness(const IntMatrix& m, const SmithForm& s) {
  return {{"matrix", to_json(m)}, {"U", to_json(s.U)}, {"V", to_json(s.V)}, {"D", to_json(s.D)}};
}

std::vector<std::string> factor_strings(const SmithForm& s) {
  std::vector<std::string> out;
  for (auto& d : s.diagonal) out.push_back(d.get_str());
  return out;
}

}  // namespace

json completion_certificate(const FGAbelian& a, unsigned long l) {
  json cert = header("completion", a.to_string());
  const SmithForm s = smith_normal_form(a.relations());
  cert["verdict"] = {{"l", l}, {"invariant_factors", factor_strings(s)}, {"completion", l_complete(a, l).to_string()}};
  cert["witness"] = smith_witness(a.relations(), s);
  return cert;
}

json snf_certificate(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(row);
  }
  json cert = header("completion", rows.dump());
  const SmithForm s = smith_normal_form(m);
  cert["verdict"] = {{"l", nullptr}, {"invariant_factors", factor_strings(s)}};
  cert["witness"] = smith_witness(m, s);
  return cert;
}

VerifyResult verify_certificate(const json& cert) {
  try {
    const std::string input = cert.at("input").get<std::string>();
    require(cert.at("digest").get<std::string>() == digest(input), "digest does not match the embedded input");
    const std::string kind = cert.at("kind").get<std::string>();
    if (kind == "perfectness")
      verify_perfectness(cert);
    else if (kind == "quasi-iso")
      verify_quasi_iso(cert);
    else if (kind == "limit")
      verify_limit(cert);
    else if (kind == "completion")
      verify_completion(cert);
    else
      return {false, "unknown certificate kind '" + kind + "'"};
    return {true, ""};
  } catch (const Reject& r) {
    return {false, r.reason};
  } catch (const Error& e) {
    return {false, std::string(to_string(e.code())) + ": " + e.what()};
  } catch (const json::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

}  // namespace lfin
