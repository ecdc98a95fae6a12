#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polyroots/bivariate.hpp"
#include "polyroots/polynomial.hpp"
#include "polyroots/tolerances.hpp"

namespace polyroots::cli {

using ParsedPoly = std::variant<RealPoly, ComplexPoly, BivarPoly>;

/// Parses either an ascending coefficient list `[a0, a1, ...]` (entries may be
/// complex literals such as `1+2i`) or a term expression in x and y such as
/// `3x^2y - 1.5y^4 + 2` or `(x^2-4)^2 + (y^2-9)^2`. Lists of real numbers give
/// a RealPoly, lists containing a complex literal a ComplexPoly, and term
/// expressions a BivarPoly. U+2212 is accepted as a minus sign.
ParsedPoly parse_poly(std::string_view text);

/// A single real or complex literal: `2`, `-1.5`, `3i`, `1-2i`.
std::complex<double> parse_number(std::string_view text);

/// Canonical sparse-term form, terms ordered by descending x then y power.
std::string render(const BivarPoly &p);
/// Coefficient-list form.
std::string render(const RealPoly &p);
std::string render(const ComplexPoly &p);

/// Conversions used by the commands; they throw InvalidInput when the
/// polynomial does not fit (e.g. a y term where a univariate one is needed).
RealPoly as_real(const ParsedPoly &p);
ComplexPoly as_complex(const ParsedPoly &p);
BivarPoly as_bivar(const ParsedPoly &p);

enum class Command { real_roots, complex_roots, solve_system, nth_root, bound, multiplicity };
enum class Format { text, json };

struct CliConfig {
  Command command = Command::real_roots;
  std::vector<std::string> inputs;
  Tolerances tol;
  Format format = Format::text;
  double a = 0.0;
  int n = 0;
  std::string at;
};

std::string command_name(Command c);

/// Runs one command. Returns 0 on success, 2 when the solution set is
/// infinite or the complex root set is incomplete, and 1 for parse, usage
/// and other errors. Diagnostics go to `err`.
int run(const CliConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv (subcommand, inputs, flags), resolves file/stdin input and
/// dispatches to run().
int main_entry(int argc, const char *const *argv, std::istream &in, std::ostream &out,
               std::ostream &err);

} // namespace polyroots::cli
