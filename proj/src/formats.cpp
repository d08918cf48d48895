#include "arrowkernel/formats.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <string>

#include "arrowkernel/error.hpp"
#include "json.hpp"

namespace arrowkernel {
namespace {

using json = nlohmann::ordered_json;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

json parse_line(const std::string& text, std::size_t line) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw FormatError(at_line(line) + "expected a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw FormatError(at_line(line) + e.what());
  }
}

template <typename T>
T field(const json& j, const char* name, std::size_t line) {
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(at_line(line) + "missing \"" + name + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw FormatError(at_line(line) + "bad value for \"" + name + "\"");
  }
}

OrientedGaussWord word_field(const json& j, std::size_t line) {
  const auto text = field<std::string>(j, "word", line);
  try {
    return parse_word(text);
  } catch (const Error& e) {
    throw FormatError(at_line(line) + e.what());
  }
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

void write_table_jsonl(std::ostream& out, const DiagramTable& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const ArrowDiagram& x = t[i];
    const Classification c = classify(x);
    const auto m = t.find(mirror(x));
    json j;
    j["index"] = i + 1;
    j["word"] = x.text();
    j["arrows"] = x.arrows();
    j["connected"] = c.connected;
    j["irreducible"] = c.irreducible;
    j["mirror_index"] = m ? *m + 1 : 0;
    out << j.dump() << '\n';
  }
}

DiagramTable read_table_jsonl(std::istream& in) {
  std::vector<ArrowDiagram> entries;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    const json j = parse_line(text, line);
    if (field<std::size_t>(j, "index", line) != entries.size() + 1)
      throw FormatError(at_line(line) + "expected index " + std::to_string(entries.size() + 1));
    const ArrowDiagram x = canonical_form(word_field(j, line));
    const Classification c = classify(x);
    if (j.contains("arrows") && field<std::size_t>(j, "arrows", line) != x.arrows())
      throw FormatError(at_line(line) + "arrow count does not match the word");
    if ((j.contains("connected") && field<bool>(j, "connected", line) != c.connected) ||
        (j.contains("irreducible") && field<bool>(j, "irreducible", line) != c.irreducible))
      throw FormatError(at_line(line) + "classification flags do not match the word");
    entries.push_back(x);
  }
  Window w{1, 1};
  if (!entries.empty()) {
    w.b = static_cast<int>(entries.front().arrows());
    w.d = static_cast<int>(entries.back().arrows());
  }
  Filter filter = Filter::All;
  auto all = [&](Filter f) {
    return std::all_of(entries.begin(), entries.end(),
                       [&](const ArrowDiagram& x) { return satisfies(f, x); });
  };
  if (all(Filter::Connected)) filter = Filter::Connected;
  else if (all(Filter::Irreducible)) filter = Filter::Irreducible;
  try {
    return DiagramTable(w, filter, std::move(entries));
  } catch (const WindowError& e) {
    throw FormatError(e.what());
  }
}

void write_relators_jsonl(std::ostream& out, std::span<const RelatorColumn> cols) {
  for (const RelatorColumn& c : cols) {
    json j;
    j["family"] = family_name(c.provenance.family);
    json terms = json::array();
    for (const auto& [x, coef] : c.combination.terms())
      terms.push_back(json{{"word", x.text()}, {"coef", coef}});
    j["terms"] = std::move(terms);
    out << j.dump() << '\n';
  }
}

std::vector<RelatorColumn> read_relators_jsonl(std::istream& in) {
  std::vector<RelatorColumn> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    const json j = parse_line(text, line);
    RelatorColumn c;
    try {
      c.provenance.family = parse_family(field<std::string>(j, "family", line));
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(at_line(line) + e.what());
    }
    auto terms = j.find("terms");
    if (terms == j.end() || !terms->is_array())
      throw FormatError(at_line(line) + "missing \"terms\" array");
    for (const json& t : *terms) {
      if (!t.is_object()) throw FormatError(at_line(line) + "term is not an object");
      c.combination.add(canonical_form(word_field(t, line)), field<std::int64_t>(t, "coef", line));
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_kernel_csv(std::ostream& out, const KernelBasis& k) { write_vectors_csv(out, k.vectors()); }

void write_vectors_csv(std::ostream& out, const std::vector<std::vector<mpz_class>>& rows) {
  for (const auto& v : rows) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].get_str();
    out << '\n';
  }
}

std::vector<std::vector<mpz_class>> read_vectors_csv(std::istream& in) {
  std::vector<std::vector<mpz_class>> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (blank(text)) continue;
    std::vector<mpz_class> row;
    std::size_t i = 0;
    while (true) {
      std::size_t j = text.find(',', i);
      std::string cell = text.substr(i, j == std::string::npos ? std::string::npos : j - i);
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      if (!cell.empty() && cell.front() == '+') cell.erase(0, 1);
      mpz_class v;
      if (cell.empty() || v.set_str(cell, 10) != 0)
        throw FormatError(at_line(line) + "bad integer '" + cell + "'");
      row.push_back(std::move(v));
      if (j == std::string::npos) break;
      i = j + 1;
    }
    if (!out.empty() && row.size() != out.front().size())
      throw FormatError(at_line(line) + "row length " + std::to_string(row.size()) +
                        " differs from " + std::to_string(out.front().size()));
    out.push_back(std::move(row));
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const EvaluationMatrix& m,
                      std::span<const RelatorColumn> cols) {
  for (std::size_t j = 0; j < m.sources.size(); ++j) {
    const std::size_t s = m.sources[j];
    if (s >= cols.size()) throw IndexError("matrix column source out of range");
    out << (j ? "," : "") << family_name(cols[s].provenance.family) << '_' << s + 1;
  }
  out << '\n';
  const auto dense = m.entries.to_dense();
  for (const auto& row : dense) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j].get_str();
    out << '\n';
  }
}

std::set<std::pair<std::size_t, std::size_t>> read_whitelist_json(std::istream& in,
                                                                   const DiagramTable& t) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("whitelist: ") + e.what());
  }
  if (!j.is_object() || !j.contains("reflective_pairs") || !j["reflective_pairs"].is_array())
    throw FormatError("whitelist: expected {\"reflective_pairs\": [[a, b], ...]}");
  auto resolve = [&](const json& e) -> std::size_t {
    if (e.is_number_integer()) {
      const auto i = e.get<long long>();
      if (i < 1 || static_cast<std::size_t>(i) > t.size())
        throw IndexError("whitelist index " + std::to_string(i) + " out of range");
      return static_cast<std::size_t>(i - 1);
    }
    if (e.is_string()) {
      OrientedGaussWord w;
      try {
        w = parse_word(e.get<std::string>());
      } catch (const Error& err) {
        throw FormatError(std::string("whitelist: ") + err.what());
      }
      if (auto i = t.find(canonical_form(w))) return *i;
      throw IndexError("whitelist word '" + e.get<std::string>() + "' is not in the table");
    }
    throw FormatError("whitelist entries must be indices or words");
  };
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const json& p : j["reflective_pairs"]) {
    if (!p.is_array() || p.size() != 2) throw FormatError("whitelist: each pair needs two entries");
    const std::size_t a = resolve(p[0]), b = resolve(p[1]);
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}

}  // namespace arrowkernel
