#include "sigenum/io.hpp"

#include <charconv>
#include <cmath>
#include <optional>

namespace sigenum::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Header {
  std::string kind;
  int n = 0;
  int m = 0;
  int beta = 0;
};

Header parse_header(std::string_view line) {
  const auto tokens = split_commas(line);
  Header h;
  h.kind = std::string(tokens.front());
  if (h.kind != "eigenvalues" && h.kind != "snapshots")
    throw ParseError(1, "header must start with 'eigenvalues' or 'snapshots', got '" + h.kind +
                            "'");
  std::optional<long long> n, m, beta;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string_view::npos)
      throw ParseError(1, "expected key=value in header, got '" + std::string(tokens[i]) + "'");
    const auto key = trim(tokens[i].substr(0, eq));
    long long value = 0;
    if (!parse_int(tokens[i].substr(eq + 1), value))
      throw ParseError(1, "header value for '" + std::string(key) + "' is not an integer");
    if (key == "n")
      n = value;
    else if (key == "m")
      m = value;
    else if (key == "beta")
      beta = value;
    else
      throw ParseError(1, "unknown header key '" + std::string(key) + "'");
  }
  if (!n || !m || !beta) throw ParseError(1, "header must define n, m and beta");
  constexpr long long kMaxDim = 1'000'000;
  if (*n < 1 || *m < 1 || *n > kMaxDim || *m > kMaxDim)
    throw ParseError(1, "header dimensions out of range");
  h.n = static_cast<int>(*n);
  h.m = static_cast<int>(*m);
  h.beta = static_cast<int>(*beta);
  return h;
}

double parse_value(std::string_view token, std::size_t line) {
  double v = 0.0;
  if (!parse_double(token, v))
    throw ParseError(line, "cannot parse '" + std::string(token) + "' as a number");
  return v;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

bool parse_int(std::string_view token, long long& out) {
  token = trim(token);
  if (token.empty()) return false;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

InputFile read_input(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "input is empty");
  const Header header = parse_header(trim(line));

  std::size_t line_no = 1;
  if (header.kind == "eigenvalues") {
    EigenvalueFile file{header.n, header.m, header.beta, {}};
    while (std::getline(in, line)) {
      ++line_no;
      const auto body = trim(line);
      if (body.empty()) continue;
      if (body.find(',') != std::string_view::npos)
        throw ParseError(line_no, "expected one eigenvalue per line");
      file.values.push_back(parse_value(body, line_no));
    }
    if (file.values.size() != static_cast<std::size_t>(header.n))
      throw ParseError(line_no, "expected " + std::to_string(header.n) + " eigenvalues, found " +
                                    std::to_string(file.values.size()));
    return file;
  }

  SnapshotMatrix x(header.n, header.m, field_from_beta(header.beta));
  const std::size_t width = static_cast<std::size_t>(header.m) * (x.is_complex() ? 2 : 1);
  int row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (row == header.n) throw ParseError(line_no, "more than n = " + std::to_string(header.n) +
                                                       " snapshot rows");
    const auto tokens = split_commas(body);
    if (tokens.size() != width)
      throw ParseError(line_no, "expected " + std::to_string(width) + " values, found " +
                                    std::to_string(tokens.size()));
    for (int j = 0; j < header.m; ++j) {
      if (x.is_complex()) {
        x.re(row, j) = parse_value(tokens[2 * static_cast<std::size_t>(j)], line_no);
        x.im(row, j) = parse_value(tokens[2 * static_cast<std::size_t>(j) + 1], line_no);
      } else {
        x.re(row, j) = parse_value(tokens[static_cast<std::size_t>(j)], line_no);
      }
    }
    ++row;
  }
  if (row != header.n)
    throw ParseError(line_no, "expected " + std::to_string(header.n) + " snapshot rows, found " +
                                  std::to_string(row));
  return x;
}

void write_eigenvalue_file(std::ostream& out, const SampleSpectrum& s) {
  out << "eigenvalues,n=" << s.n() << ",m=" << s.m() << ",beta=" << s.beta() << '\n';
  for (double l : s.eigenvalues()) out << format_double(l) << '\n';
}

void write_snapshot_file(std::ostream& out, const SnapshotMatrix& x) {
  out << "snapshots,n=" << x.n() << ",m=" << x.m() << ",beta=" << beta_of(x.field()) << '\n';
  for (int i = 0; i < x.n(); ++i) {
    for (int j = 0; j < x.m(); ++j) {
      if (j > 0) out << ',';
      out << format_double(x.re(i, j));
      if (x.is_complex()) out << ',' << format_double(x.im(i, j));
    }
    out << '\n';
  }
}

}  // namespace sigenum::io
