#include "gadgetlab/text_format.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gadgetlab/error.hpp"

namespace gadgetlab {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
}

// Cursor over one line; columns reported 1-based.
class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t number) : line_(line), number_(number) {}

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  std::string name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(line_.substr(start, pos_ - start));
  }
  std::size_t number() {
    skip_ws();
    std::size_t value = 0;
    auto begin = line_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, line_.data() + line_.size(), value);
    if (ec != std::errc() || ptr == begin) fail("expected a nonnegative integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, number_, pos_ + 1);
  }

 private:
  std::string_view line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

Vertex to_vertex(LineCursor& cur) {
  std::size_t v = cur.number();
  if (v > std::numeric_limits<Vertex>::max()) cur.fail("vertex id too large");
  return static_cast<Vertex>(v);
}

Language parse_language_line(LineCursor& cur) {
  if (cur.name() != "language") cur.fail("expected 'language:' header");
  cur.expect(':');
  std::vector<RelationSymbol> rels;
  std::vector<std::string> consts;
  bool in_consts = false;
  while (!cur.at_end()) {
    if (cur.consume(';')) {
      if (in_consts) cur.fail("unexpected ';'");
      if (cur.name() != "const") cur.fail("expected 'const' after ';'");
      in_consts = true;
      continue;
    }
    std::string n = cur.name();
    if (in_consts) {
      consts.push_back(std::move(n));
      continue;
    }
    cur.expect('/');
    std::size_t arity = cur.number();
    if (arity == 0) cur.fail("arity must be positive");
    rels.push_back({std::move(n), arity});
  }
  try {
    return Language(std::move(rels), std::move(consts));
  } catch (const Error& e) {
    cur.fail(e.what());
  }
}

}  // namespace

Structure parse_structure(std::string_view text) {
  std::optional<Language> language;
  std::optional<std::size_t> size;
  std::vector<RelationData> relations;
  std::vector<ConstantData> constants;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    LineCursor cur(line, line_no);

    if (!language) {
      language = parse_language_line(cur);
      continue;
    }
    if (!size) {
      if (cur.name() != "vertices") cur.fail("expected 'vertices:' line");
      cur.expect(':');
      size = cur.number();
      if (!cur.at_end()) cur.fail("trailing characters");
      continue;
    }
    std::string head = cur.name();
    if (head == "const") {
      ConstantData cd;
      cd.symbol = cur.name();
      cur.expect('=');
      cd.vertex = to_vertex(cur);
      if (!cur.at_end()) cur.fail("trailing characters");
      constants.push_back(std::move(cd));
      continue;
    }
    cur.expect(':');
    RelationData rd{head, {}};
    while (!cur.at_end()) {
      cur.expect('(');
      Tuple t{to_vertex(cur)};
      while (cur.consume(',')) t.push_back(to_vertex(cur));
      cur.expect(')');
      rd.tuples.push_back(std::move(t));
    }
    relations.push_back(std::move(rd));
    if (end == text.size()) break;
  }
  if (!language) throw ParseError("missing 'language:' header", 1, 1);
  if (!size) throw ParseError("missing 'vertices:' line", line_no, 1);
  return build_structure(*language, *size, relations, constants);
}

std::string format_structure(const Structure& s) {
  std::ostringstream out;
  const Language& lang = s.language();
  out << "language:";
  for (const auto& r : lang.relations()) out << ' ' << r.name << '/' << r.arity;
  if (!lang.constants().empty()) {
    out << " ; const";
    for (const auto& c : lang.constants()) out << ' ' << c;
  }
  out << "\nvertices: " << s.size() << '\n';
  for (std::size_t r = 0; r < lang.relations().size(); ++r) {
    out << lang.relations()[r].name << ':';
    for (const auto& t : s.relation(r)) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ')';
    }
    out << '\n';
  }
  for (std::size_t c = 0; c < lang.constants().size(); ++c)
    out << "const " << lang.constants()[c] << " = " << s.constants()[c] << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io_error, "cannot read " + path);
  return buf.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "cannot write " + path);
  }
}

Structure read_structure_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_structure(text);
  } catch (const ParseError& e) {
    throw e.in_source(path);
  }
}

void write_structure_file(const std::string& path, const Structure& s) {
  write_file_atomic(path, format_structure(s));
}

}  // namespace gadgetlab
