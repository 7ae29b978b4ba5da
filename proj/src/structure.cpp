#include "relic/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace relic {

// ---- Signature ----

bool Signature::valid_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Signature::Signature(std::vector<Symbol> symbols) {
  for (auto& sym : symbols) add(sym);
}

void Signature::add(const Symbol& sym) {
  if (!valid_name(sym.name)) throw PreconditionError("bad symbol name: '" + sym.name + "'");
  if (sym.arity < 1) throw PreconditionError("symbol " + sym.name + ": arity must be >= 1");
  if (has(sym.name)) throw PreconditionError("duplicate symbol name: " + sym.name);
  symbols_.push_back(sym);
}

bool Signature::has(const std::string& name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return true;
  return false;
}

std::size_t Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  throw PreconditionError("unknown symbol: " + name);
}

int Signature::arity(const std::string& name) const { return symbols_[index_of(name)].arity; }

bool Signature::arity_compatible(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.at(i).arity != b.at(i).arity) return false;
  return true;
}

Signature Signature::name_normalized() const {
  Signature out;
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    out.add({"S" + std::to_string(i), symbols_[i].arity});
  return out;
}

// ---- Structure ----

const Table& Structure::table(const std::string& sym) const { return tables[sig.index_of(sym)]; }

bool Structure::holds(std::size_t sym_index, const Tuple& t) const {
  return table_contains(tables[sym_index], t);
}

std::size_t Structure::tuple_count() const {
  std::size_t n = 0;
  for (const auto& t : tables) n += t.size();
  return n;
}

void Structure::validate() const {
  // size 0 is legal only as the designated empty structure (no tuples fit anyway).
  if (size < 0) throw PreconditionError("structure " + name + ": negative universe");
  if (tables.size() != sig.size())
    throw PreconditionError("structure " + name + ": table/signature mismatch");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const int arity = sig.at(i).arity;
    for (const auto& t : tables[i]) {
      if (static_cast<int>(t.size()) != arity)
        throw PreconditionError("structure " + name + ": tuple arity mismatch for " +
                                sig.at(i).name);
      for (int e : t)
        if (e < 0 || e >= size)
          throw PreconditionError("structure " + name + ": element out of range in " +
                                  sig.at(i).name);
    }
    if (!std::is_sorted(tables[i].begin(), tables[i].end()))
      throw PreconditionError("structure " + name + ": table not normalized");
  }
}

void table_insert(Table& table, Tuple t) {
  auto it = std::lower_bound(table.begin(), table.end(), t);
  if (it == table.end() || *it != t) table.insert(it, std::move(t));
}

bool table_contains(const Table& table, const Tuple& t) {
  return std::binary_search(table.begin(), table.end(), t);
}

// ---- parsing ----

namespace {

// Strips comments, returns trimmed nonempty lines.
std::vector<std::string> logical_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer for " + what + ", got '" + s + "'");
  }
}

// Parses "(a,b,c)" groups out of the tail of a rel line.
std::vector<Tuple> parse_tuples(const std::string& text) {
  std::vector<Tuple> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in tuple list: " + text);
    ++i;
    Tuple t;
    while (true) {
      skip_ws();
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])))) ++j;
      if (j == i) throw ParseError("expected element index in tuple list: " + text);
      t.push_back(parse_int(text.substr(i, j - i), "tuple element"));
      i = j;
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated tuple: " + text);
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or ')' in tuple: " + text);
    }
    out.push_back(std::move(t));
    skip_ws();
  }
  return out;
}

}  // namespace

std::vector<Structure> parse_structures(const std::string& text) {
  std::vector<Structure> out;
  auto lines = logical_lines(text);
  std::size_t i = 0;
  while (i < lines.size()) {
    auto head = split_ws(lines[i]);
    if (head.size() != 2 || head[0] != "structure")
      throw ParseError("expected 'structure <name>', got: " + lines[i]);
    Structure s;
    s.name = head[1];
    if (!Signature::valid_name(s.name)) throw ParseError("bad structure name: " + s.name);
    ++i;
    bool saw_sig = false, saw_universe = false, done = false;
    while (i < lines.size() && !done) {
      auto words = split_ws(lines[i]);
      const std::string& kw = words[0];
      if (kw == "signature") {
        if (saw_sig) throw ParseError(s.name + ": repeated signature line");
        saw_sig = true;
        for (std::size_t w = 1; w < words.size(); ++w) {
          auto slash = words[w].find('/');
          if (slash == std::string::npos)
            throw ParseError(s.name + ": expected Sym/arity, got '" + words[w] + "'");
          s.sig.add({words[w].substr(0, slash),
                     parse_int(words[w].substr(slash + 1), "arity of " + words[w])});
        }
        s.tables.assign(s.sig.size(), {});
      } else if (kw == "universe") {
        if (!saw_sig) throw ParseError(s.name + ": universe before signature");
        if (saw_universe) throw ParseError(s.name + ": repeated universe line");
        if (words.size() != 2) throw ParseError(s.name + ": expected 'universe <n>'");
        s.size = parse_int(words[1], "universe size");
        saw_universe = true;
      } else if (kw == "rel") {
        if (!saw_universe) throw ParseError(s.name + ": rel before universe");
        auto colon = lines[i].find(':');
        if (colon == std::string::npos) throw ParseError(s.name + ": expected 'rel Sym: ...'");
        auto symwords = split_ws(lines[i].substr(3, colon - 3));
        if (symwords.size() != 1) throw ParseError(s.name + ": expected one symbol in rel line");
        if (!s.sig.has(symwords[0]))
          throw ParseError(s.name + ": rel for unknown symbol " + symwords[0]);
        auto idx = s.sig.index_of(symwords[0]);
        for (auto& t : parse_tuples(lines[i].substr(colon + 1)))
          table_insert(s.tables[idx], std::move(t));
      } else if (kw == "end") {
        if (words.size() != 1) throw ParseError("stray tokens after 'end'");
        done = true;
      } else {
        throw ParseError(s.name + ": unexpected line: " + lines[i]);
      }
      ++i;
    }
    if (!done) throw ParseError(s.name + ": missing 'end'");
    if (!saw_sig || !saw_universe) throw ParseError(s.name + ": missing signature or universe");
    try {
      s.validate();
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
    out.push_back(std::move(s));
  }
  if (out.empty()) throw ParseError("no structure blocks found");
  return out;
}

Structure parse_structure(const std::string& text) { return parse_structures(text).front(); }

std::vector<Structure> load_structures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open structure file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structures(buf.str());
}

Structure load_structure(const std::string& path, const std::string& name) {
  auto all = load_structures(path);
  if (name.empty()) return all.front();
  for (auto& s : all)
    if (s.name == name) return s;
  throw ParseError("no structure named '" + name + "' in " + path);
}

std::string render_structure(const Structure& s) {
  std::ostringstream out;
  out << "structure " << s.name << "\n";
  out << "signature";
  for (const auto& sym : s.sig.symbols()) out << " " << sym.name << "/" << sym.arity;
  out << "\n";
  out << "universe " << s.size << "\n";
  for (std::size_t i = 0; i < s.sig.size(); ++i) {
    if (s.tables[i].empty()) continue;
    std::size_t per_line = 0;
    for (std::size_t k = 0; k < s.tables[i].size(); ++k) {
      if (per_line == 0) out << "rel " << s.sig.at(i).name << ":";
      out << " (";
      for (std::size_t j = 0; j < s.tables[i][k].size(); ++j) {
        if (j) out << ",";
        out << s.tables[i][k][j];
      }
      out << ")";
      if (++per_line == 8 || k + 1 == s.tables[i].size()) {
        out << "\n";
        per_line = 0;
      }
    }
  }
  out << "end\n";
  return out.str();
}

// ---- operations ----

Structure reduct(const Structure& s, const std::vector<std::string>& keep) {
  Structure out;
  out.name = s.name;
  out.size = s.size;
  for (const auto& name : keep) {
    auto idx = s.sig.index_of(name);
    out.sig.add(s.sig.at(idx));
    out.tables.push_back(s.tables[idx]);
  }
  out.validate();
  return out;
}

Structure induced_substructure(const Structure& s, const std::vector<int>& elements) {
  // An empty element set yields the designated empty structure (the legal
  // size-0 case), e.g. the p_infty extent of a fully covered combination.
  std::vector<int> renumber(s.size, -1);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    int e = elements[i];
    if (e < 0 || e >= s.size) throw PreconditionError("induced substructure: element out of range");
    if (renumber[e] != -1) throw PreconditionError("induced substructure: duplicate element");
    renumber[e] = static_cast<int>(i);
  }
  Structure out;
  out.name = s.name + "_sub";
  out.sig = s.sig;
  out.size = static_cast<int>(elements.size());
  out.tables.assign(s.sig.size(), {});
  for (std::size_t i = 0; i < s.sig.size(); ++i) {
    for (const auto& t : s.tables[i]) {
      Tuple img(t.size());
      bool inside = true;
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (renumber[t[j]] == -1) {
          inside = false;
          break;
        }
        img[j] = renumber[t[j]];
      }
      if (inside) table_insert(out.tables[i], std::move(img));
    }
  }
  out.validate();
  return out;
}

std::vector<Structure> rename_disjoint(const std::vector<Structure>& parts) {
  if (parts.empty()) throw PreconditionError("rename_disjoint: empty input");
  // Suffix "_<i>"; on the rare global collision, retry with a longer marker.
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::string marker(static_cast<std::size_t>(attempt + 1), '_');
    std::vector<Structure> out;
    std::vector<std::string> seen;
    bool ok = true;
    for (std::size_t i = 0; i < parts.size() && ok; ++i) {
      Structure s = parts[i];
      Signature renamed;
      for (const auto& sym : s.sig.symbols()) {
        std::string nn = sym.name + marker + std::to_string(i);
        if (std::find(seen.begin(), seen.end(), nn) != seen.end()) {
          ok = false;
          break;
        }
        seen.push_back(nn);
        renamed.add({nn, sym.arity});
      }
      if (!ok) break;
      s.sig = renamed;
      out.push_back(std::move(s));
    }
    if (ok) return out;
  }
  throw PreconditionError("rename_disjoint: could not find collision-free renaming");
}

Structure rename_symbols(const Structure& s, const std::vector<std::string>& from,
                         const std::vector<std::string>& to) {
  if (from.size() != to.size()) throw PreconditionError("rename_symbols: from/to length mismatch");
  Structure out = s;
  Signature renamed;
  for (const auto& sym : s.sig.symbols()) {
    std::string name = sym.name;
    for (std::size_t i = 0; i < from.size(); ++i)
      if (name == from[i]) name = to[i];
    renamed.add({name, sym.arity});
  }
  out.sig = renamed;
  out.validate();
  return out;
}

Structure disjoint_sum(const Structure& a, const Structure& b) {
  if (a.sig != b.sig) throw PreconditionError("disjoint_sum: signatures differ");
  Structure out = a;
  out.name = a.name + "+" + b.name;
  out.size = a.size + b.size;
  for (std::size_t i = 0; i < b.sig.size(); ++i) {
    for (const auto& t : b.tables[i]) {
      Tuple shifted = t;
      for (int& e : shifted) e += a.size;
      table_insert(out.tables[i], std::move(shifted));
    }
  }
  out.validate();
  return out;
}

Structure disjoint_copies(const Structure& s, int k) {
  if (k < 1) throw PreconditionError("disjoint_copies: k must be >= 1");
  Structure out = s;
  for (int i = 1; i < k; ++i) out = disjoint_sum(out, s);
  out.name = s.name + "x" + std::to_string(k);
  return out;
}

}  // namespace relic
