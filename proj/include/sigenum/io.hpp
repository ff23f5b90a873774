#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sigenum/core.hpp"
#include "sigenum/randgen.hpp"

namespace sigenum::io {

/// Malformed input file; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest round-trip decimal form, locale independent; +inf prints as "inf".
std::string format_double(double v);

/// Strict locale-independent parse of a whole token.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, long long& out);

/// Raw eigenvalue list as read from file, before validation.
struct EigenvalueFile {
  int n = 0;
  int m = 0;
  int beta = 1;
  std::vector<double> values;
};

/// Either header "eigenvalues,n=..,m=..,beta=.." or "snapshots,...".
using InputFile = std::variant<EigenvalueFile, SnapshotMatrix>;

/// Dispatches on the first header token. Throws ParseError.
InputFile read_input(std::istream& in);

void write_eigenvalue_file(std::ostream& out, const SampleSpectrum& s);
/// Complex matrices write re,im pairs per entry (2m columns).
void write_snapshot_file(std::ostream& out, const SnapshotMatrix& x);

}  // namespace sigenum::io
