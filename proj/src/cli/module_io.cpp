#include "adelic/cli/module_io.hpp"

#include <cctype>

#include "json.hpp"

namespace adelic {

namespace {

using json = nlohmann::ordered_json;

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ModuleParseError(std::string("field ") + key, "missing");
  return j.at(key);
}

}  // namespace

ModuleSpec parse_module_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModuleParseError(line_col(text, e.byte), "malformed JSON");
  }
  if (!j.is_object()) throw ModuleParseError("line 1, column 1", "expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const char* known[] = {"q", "base", "m_or_var", "rank", "phiT", "name"};
    bool ok = false;
    for (auto* k : known) ok = ok || it.key() == k;
    if (!ok) throw ModuleParseError("field " + it.key(), "unknown field");
  }

  ModuleSpec s;
  const auto& q = field(j, "q");
  if (!q.is_number_unsigned()) throw ModuleParseError("field q", "expected a positive integer");
  s.q = q.get<std::uint32_t>();
  try {
    Fq::get(s.q);
  } catch (const std::exception& e) {
    throw ModuleParseError("field q", e.what());
  }

  const auto& base = field(j, "base");
  if (!base.is_string() || (base != "finite" && base != "rational"))
    throw ModuleParseError("field base", "expected \"finite\" or \"rational\"");
  s.base = base.get<std::string>();

  const auto& mv = field(j, "m_or_var");
  if (s.base == "finite") {
    if (!mv.is_number_unsigned() || mv.get<unsigned>() == 0)
      throw ModuleParseError("field m_or_var", "finite base needs a positive extension degree");
    s.m_or_var = mv.get<unsigned>();
  } else {
    if (!mv.is_string() || mv.get<std::string>().empty())
      throw ModuleParseError("field m_or_var", "rational base needs a variable name");
    auto v = mv.get<std::string>();
    for (char c : v)
      if (!std::isalpha(static_cast<unsigned char>(c))) throw ModuleParseError("field m_or_var", "variable must be alphabetic");
    s.m_or_var = v;
  }

  const auto& rank = field(j, "rank");
  if (!rank.is_number_unsigned() || rank.get<int>() < 1) throw ModuleParseError("field rank", "expected an integer >= 1");
  s.rank = rank.get<int>();

  const auto& phi = field(j, "phiT");
  if (!phi.is_array()) throw ModuleParseError("field phiT", "expected an array of strings");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!phi[i].is_string()) throw ModuleParseError("field phiT[" + std::to_string(i) + "]", "expected a string");
    s.phiT.push_back(phi[i].get<std::string>());
  }
  if (static_cast<int>(s.phiT.size()) != s.rank + 1)
    throw ModuleParseError("field phiT", "expected rank + 1 = " + std::to_string(s.rank + 1) + " coefficients");

  const auto& name = field(j, "name");
  if (!name.is_string()) throw ModuleParseError("field name", "expected a string");
  s.name = name.get<std::string>();

  // validate the coefficients now so diagnostics point at the file
  auto k = Fq::get(s.q);
  std::string var = s.base == "rational" ? std::get<std::string>(s.m_or_var) : "s";
  for (std::size_t i = 0; i < s.phiT.size(); ++i) {
    APoly c;
    try {
      c = parse_sparse_poly(k, s.phiT[i], var);
    } catch (const std::invalid_argument& e) {
      throw ModuleParseError("field phiT[" + std::to_string(i) + "]", e.what());
    }
    if (i + 1 == s.phiT.size() && c.empty())
      throw ModuleParseError("field phiT[" + std::to_string(i) + "]", "leading coefficient is zero");
    if (i == 0 && s.base == "rational" && c.size() > 1)
      throw ModuleParseError("field phiT[0]", "constant term must not involve " + var + " (generic characteristic)");
  }
  return s;
}

std::string module_spec_to_json(const ModuleSpec& s) {
  json j;
  j["q"] = s.q;
  j["base"] = s.base;
  if (std::holds_alternative<unsigned>(s.m_or_var))
    j["m_or_var"] = std::get<unsigned>(s.m_or_var);
  else
    j["m_or_var"] = std::get<std::string>(s.m_or_var);
  j["rank"] = s.rank;
  j["phiT"] = s.phiT;
  j["name"] = s.name;
  return j.dump(2) + "\n";
}

APoly parse_sparse_poly(const Fq& k, const std::string& text, const std::string& var) {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("column " + std::to_string(i + 1) + ": " + what);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> std::uint64_t {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a number");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<unsigned>(text[i] - '0');
      if (v > 1000000) fail("number too large");
      ++i;
    }
    return v;
  };

  PolyRing<Fq> P(k);
  APoly f;
  skip();
  if (i == text.size()) fail("empty polynomial");
  bool first = true;
  while (i < text.size()) {
    bool neg = false;
    if (!first) {
      if (text[i] != '+' && text[i] != '-') fail("expected '+' or '-'");
      neg = text[i] == '-';
      ++i;
      skip();
    } else if (text[i] == '-') {
      neg = true;
      ++i;
      skip();
    }
    first = false;
    Fq::Elem c = 1;
    bool has_c = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      auto v = number();
      if (v >= k.order()) fail("coefficient " + std::to_string(v) + " is not an element code below q = " + std::to_string(k.order()));
      c = static_cast<Fq::Elem>(v);
      has_c = true;
      skip();
    }
    std::size_t e = 0;
    bool has_var = false;
    if (has_c && i < text.size() && text[i] == '*') {
      ++i;
      skip();
      if (text.compare(i, var.size(), var) != 0) fail("expected '" + var + "'");
    }
    if (text.compare(i, var.size(), var) == 0) {
      i += var.size();
      has_var = true;
      e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        e = number();
        skip();
      }
    }
    if (!has_c && !has_var) fail("expected a term");
    if (neg) c = k.neg(c);
    if (f.size() <= e) f.resize(e + 1, 0);
    f[e] = k.add(f[e], c);
  }
  P.normalize(f);
  return f;
}

std::string sparse_poly_to_string(const APoly& f, const std::string& var) {
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(f[i]);
      continue;
    }
    if (f[i] != 1) out += std::to_string(f[i]) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

DrinfeldFamily to_family(const ModuleSpec& s) {
  if (s.base != "rational") throw std::invalid_argument("to_family: module has a finite base");
  auto k = Fq::get(s.q);
  DrinfeldFamily fam{k, {}, s.name};
  for (auto& c : s.phiT) fam.phiT.push_back(parse_sparse_poly(k, c, std::get<std::string>(s.m_or_var)));
  return fam;
}

DrinfeldModule to_module(const ModuleSpec& s) {
  if (s.base != "finite") throw std::invalid_argument("to_module: module has a rational base");
  auto K = ExtField::build(s.q, std::get<unsigned>(s.m_or_var));
  SkewExt::Elem phi;
  for (auto& c : s.phiT) phi.push_back(K.from_poly(parse_sparse_poly(K.base(), c, "s")));
  return DrinfeldModule(K, phi, s.name);
}

ModuleSpec spec_of(const DrinfeldFamily& fam, const std::string& var) {
  ModuleSpec s;
  s.q = fam.k.order();
  s.base = "rational";
  s.m_or_var = var;
  s.rank = fam.rank();
  for (auto& c : fam.phiT) s.phiT.push_back(sparse_poly_to_string(c, var));
  s.name = fam.name;
  return s;
}

}  // namespace adelic
