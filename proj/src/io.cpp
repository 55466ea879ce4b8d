#include "mosaic/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "mosaic/errors.hpp"

namespace mosaic::io {

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;  // 1-based
  std::vector<Token> tokens;
};

// Splits on newlines and whitespace; blank lines are dropped. With
// `comments`, text from '#' to the end of the line is ignored.
std::vector<Line> tokenize(std::string_view text, bool comments = false) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (comments) raw = raw.substr(0, std::min(raw.find('#'), raw.size()));
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

long long to_int(const Token& token, std::size_t line, const char* what) {
  long long value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(token.text) + "'", line,
                     token.column);
  return value;
}

int positive(const Token& token, std::size_t line, const char* what, long long max = 1'000'000) {
  const long long value = to_int(token, line, what);
  if (value < 1 || value > max)
    throw ParseError(std::string(what) + " out of range: " + std::string(token.text), line, token.column);
  return static_cast<int>(value);
}

const Line& header(const std::vector<Line>& lines, const char* format) {
  if (lines.empty()) throw ParseError(std::string("empty ") + format + " file", 1);
  return lines.front();
}

}  // namespace

Mosaic parse_mosaic(std::string_view text) {
  const auto lines = tokenize(text);
  const Line& head = header(lines, "mosaic");
  const auto& h = head.tokens;
  if (h.size() < 3 || h.size() > 4)
    throw ParseError("mosaic header must be 'v b c [diag]'", head.number, 1);
  const int v = positive(h[0], head.number, "v", 4096);
  const int b = positive(h[1], head.number, "b", 1 << 16);
  const int c = positive(h[2], head.number, "c", 255);
  bool diag = false;
  if (h.size() == 4) {
    if (h[3].text != "diag")
      throw ParseError("unknown header flag '" + std::string(h[3].text) + "'", head.number, h[3].column);
    diag = true;
  }
  if (diag && v != b) throw ParseError("diag mosaic must be square", head.number, h[3].column);
  if (lines.size() != static_cast<std::size_t>(v) + 1) {
    const std::size_t at = lines.size() > static_cast<std::size_t>(v) + 1 ? lines[v + 1].number
                                                                           : lines.back().number + 1;
    throw ParseError("expected " + std::to_string(v) + " rows, found " + std::to_string(lines.size() - 1),
                     at);
  }
  std::vector<Color> entries;
  entries.reserve(static_cast<std::size_t>(v) * b);
  for (int i = 0; i < v; ++i) {
    const Line& line = lines[i + 1];
    if (line.tokens.size() != static_cast<std::size_t>(b))
      throw ParseError("expected " + std::to_string(b) + " entries, found " +
                           std::to_string(line.tokens.size()),
                       line.number, 1);
    for (int j = 0; j < b; ++j) {
      const Token& tok = line.tokens[j];
      const long long x = to_int(tok, line.number, "an entry");
      if (x < 0 || x > c)
        throw ParseError("entry " + std::string(tok.text) + " outside 0.." + std::to_string(c), line.number,
                         tok.column);
      if (diag && (x == 0) != (i == j))
        throw ParseError(x == 0 ? "zero off the diagonal" : "diagonal entry must be 0", line.number,
                         tok.column);
      if (!diag && x == 0) throw ParseError("entry 0 needs the diag flag", line.number, tok.column);
      entries.push_back(static_cast<Color>(x));
    }
  }
  return Mosaic(v, b, c, diag, std::move(entries));
}

std::string format_mosaic(const Mosaic& m) {
  std::ostringstream out;
  out << m.v() << ' ' << m.b() << ' ' << m.c();
  if (m.diagonal_zero()) out << " diag";
  out << '\n';
  for (int i = 0; i < m.v(); ++i) {
    for (int j = 0; j < m.b(); ++j) out << (j ? " " : "") << static_cast<int>(m.at(i, j));
    out << '\n';
  }
  return out.str();
}

Design parse_design(std::string_view text) {
  const auto lines = tokenize(text);
  const Line& head = header(lines, "design");
  if (head.tokens.size() != 2) throw ParseError("design header must be 'v b'", head.number, 1);
  const int v = positive(head.tokens[0], head.number, "v", 4096);
  const int b = positive(head.tokens[1], head.number, "b", 1 << 20);
  if (lines.size() != static_cast<std::size_t>(b) + 1)
    throw ParseError("expected " + std::to_string(b) + " blocks, found " + std::to_string(lines.size() - 1),
                     lines.size() > static_cast<std::size_t>(b) + 1 ? lines[b + 1].number
                                                                     : lines.back().number + 1);
  std::vector<Block> blocks;
  blocks.reserve(b);
  for (int j = 0; j < b; ++j) {
    const Line& line = lines[j + 1];
    Block block;
    for (const Token& tok : line.tokens) {
      const int p = positive(tok, line.number, "a point", v);
      if (std::find(block.begin(), block.end(), p - 1) != block.end())
        throw ParseError("point " + std::string(tok.text) + " repeated in block", line.number, tok.column);
      block.push_back(p - 1);
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return Design(v, std::move(blocks));
}

std::string format_design(const Design& d) {
  std::ostringstream out;
  out << d.v() << ' ' << d.b() << '\n';
  for (const auto& block : d.blocks()) {
    for (std::size_t x = 0; x < block.size(); ++x) out << (x ? " " : "") << block[x] + 1;
    out << '\n';
  }
  return out.str();
}

DifferenceFamily parse_family(std::string_view text) {
  const auto lines = tokenize(text);
  const Line& head = header(lines, "family");
  if (head.tokens.size() != 3) throw ParseError("family header must be 'n c s'", head.number, 1);
  DifferenceFamily f;
  f.n = positive(head.tokens[0], head.number, "n", 1 << 16);
  const int c = positive(head.tokens[1], head.number, "c", 255);
  f.s = positive(head.tokens[2], head.number, "s", 1 << 16);
  if (lines.size() != static_cast<std::size_t>(c) + 1)
    throw ParseError("expected " + std::to_string(c) + " family lines, found " +
                         std::to_string(lines.size() - 1),
                     lines.back().number + 1);
  for (int i = 0; i < c; ++i) {
    const Line& line = lines[i + 1];
    // Rejoin the line so sets may contain spaces: "{0, 1, 4}".
    std::string joined;
    std::vector<std::size_t> origin;
    for (const Token& tok : line.tokens) {
      for (std::size_t k = 0; k < tok.text.size(); ++k) {
        joined.push_back(tok.text[k]);
        origin.push_back(tok.column + k);
      }
      joined.push_back(' ');
      origin.push_back(tok.column + tok.text.size());
    }
    std::vector<std::vector<int>> sets;
    std::size_t k = 0;
    auto fail = [&](const std::string& why) {
      throw ParseError(why, line.number, k < origin.size() ? origin[k] : origin.back());
    };
    while (k < joined.size()) {
      if (joined[k] == ' ') {
        ++k;
        continue;
      }
      if (joined[k] != '{') fail("expected '{'");
      ++k;
      std::vector<int> set;
      while (true) {
        while (k < joined.size() && joined[k] == ' ') ++k;
        if (k < joined.size() && joined[k] == '}' && set.empty()) break;
        const std::size_t start = k;
        while (k < joined.size() && std::isdigit(static_cast<unsigned char>(joined[k]))) ++k;
        if (start == k) fail("expected an element of Z_" + std::to_string(f.n));
        const int x = std::stoi(joined.substr(start, k - start));
        if (x >= f.n) {
          k = start;
          fail("element " + std::to_string(x) + " outside Z_" + std::to_string(f.n));
        }
        if (std::find(set.begin(), set.end(), x) != set.end()) {
          k = start;
          fail("element " + std::to_string(x) + " repeated");
        }
        set.push_back(x);
        while (k < joined.size() && joined[k] == ' ') ++k;
        if (k < joined.size() && joined[k] == ',') {
          ++k;
          continue;
        }
        if (k < joined.size() && joined[k] == '}') break;
        fail("expected ',' or '}'");
      }
      ++k;
      std::sort(set.begin(), set.end());
      sets.push_back(std::move(set));
    }
    if (static_cast<int>(sets.size()) != f.s)
      throw ParseError("expected " + std::to_string(f.s) + " sets, found " + std::to_string(sets.size()),
                       line.number, 1);
    f.base.push_back(std::move(sets));
  }
  return f;
}

std::string format_family(const DifferenceFamily& f) {
  std::ostringstream out;
  out << f.n << ' ' << f.c() << ' ' << f.s << '\n';
  for (const auto& color : f.base) {
    for (std::size_t j = 0; j < color.size(); ++j) {
      out << (j ? " {" : "{");
      for (std::size_t x = 0; x < color[j].size(); ++x) out << (x ? "," : "") << color[j][x];
      out << '}';
    }
    out << '\n';
  }
  return out.str();
}

SearchProblem parse_problem(std::string_view text) {
  const auto lines = tokenize(text, true);
  SearchProblem p;
  bool have_params = false, have_mode = false;
  struct Pending {
    std::size_t line;
    Token alpha;
    std::optional<Token> gamma;
  };
  std::vector<Pending> pending;
  for (const Line& line : lines) {
    const auto& t = line.tokens;
    const std::string_view key = t[0].text;
    if (key == "params") {
      if (t.size() != 2) throw ParseError("params takes one argument", line.number, t[0].column);
      if (have_params) throw ParseError("params given twice", line.number, t[0].column);
      try {
        p.params = parse_mosaic_parameters(t[1].text);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), line.number, t[1].column);
      }
      have_params = true;
    } else if (key == "mode") {
      if (t.size() != 2) throw ParseError("mode takes one argument", line.number, t[0].column);
      if (have_mode) throw ParseError("mode given twice", line.number, t[0].column);
      if (t[1].text == "general")
        p.mode = SearchMode::general;
      else if (t[1].text == "symmetric")
        p.mode = SearchMode::symmetric_diagonal;
      else
        throw ParseError("mode must be general or symmetric", line.number, t[1].column);
      have_mode = true;
    } else if (key == "generator") {
      if (t.size() < 2 || t.size() > 3)
        throw ParseError("generator takes alpha and optional gamma cycles", line.number, t[0].column);
      pending.push_back({line.number, t[1], t.size() == 3 ? std::optional<Token>(t[2]) : std::nullopt});
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line.number, t[0].column);
    }
  }
  if (!have_params) throw ParseError("missing params line", lines.empty() ? 1 : lines.back().number);
  if (!have_mode && p.params.diagonal_zero) p.mode = SearchMode::symmetric_diagonal;
  auto cycles = [](const Token& tok, std::size_t line, int n) {
    try {
      return Permutation::parse_cycles(tok.text, n);
    } catch (const ParseError& e) {
      // Cycle errors carry a column relative to the token.
      std::string what = e.what();
      const auto cut = what.find(": ");
      throw ParseError(cut == std::string::npos ? what : what.substr(cut + 2), line,
                       tok.column + (e.column() ? e.column() - 1 : 0));
    }
  };
  for (const auto& g : pending)
    p.generators.push_back({cycles(g.alpha, g.line, p.params.v),
                            g.gamma ? cycles(*g.gamma, g.line, p.params.c()) : Permutation(p.params.c())});
  return p;
}

std::string format_problem(const SearchProblem& p) {
  std::ostringstream out;
  out << "params " << p.params.to_string() << '\n';
  out << "mode " << (p.mode == SearchMode::symmetric_diagonal ? "symmetric" : "general") << '\n';
  for (const auto& g : p.generators)
    out << "generator " << g.alpha.to_cycles() << ' ' << g.gamma.to_cycles() << '\n';
  return out.str();
}

FileKind detect_kind(std::string_view text) {
  const auto lines = tokenize(text);
  const Line& head = header(lines, "input");
  switch (head.tokens.size()) {
    case 2:
      return FileKind::design;
    case 3:
    case 4:
      return FileKind::mosaic;
    default:
      throw ParseError("unrecognized header: expected 'v b' or 'v b c [diag]'", head.number, 1);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << content;
  if (!out) throw PreconditionError("write failed: " + path.string());
}

}  // namespace mosaic::io
