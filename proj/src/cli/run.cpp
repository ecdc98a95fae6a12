#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyroots/cli.hpp"
#include "polyroots/complexroots.hpp"
#include "polyroots/realroots.hpp"

namespace polyroots::cli {

namespace {

using json = nlohmann::json;
using cd = std::complex<double>;

struct Output {
  json doc;
  std::vector<std::string> lines; // text form
};

// Values below this are printed as 0 in text mode; JSON keeps full precision.
constexpr double kSnap = 1e-10;

std::string short_number(double v) {
  if (std::abs(v) < kSnap)
    v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string short_complex(const cd &z) {
  const double scale = std::max(1.0, std::abs(z));
  const double re = std::abs(z.real()) < kSnap * scale ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < kSnap * scale ? 0.0 : z.imag();
  if (im == 0.0)
    return short_number(re);
  std::string s = re == 0.0 ? "" : short_number(re) + (im < 0 ? " - " : " + ");
  if (re == 0.0 && im < 0)
    s += "-";
  const double mag = std::abs(im);
  return s + (mag == 1.0 ? "" : short_number(mag)) + "i";
}

json root_entry(const cd &z, int m, double residual) {
  return {{"re", z.real()}, {"im", z.imag()}, {"multiplicity", m}, {"residual", residual}};
}

std::string with_multiplicity(std::string s, int m) {
  if (m > 1)
    s += " (multiplicity " + std::to_string(m) + ")";
  return s;
}

void require_inputs(const CliConfig &c, std::size_t n) {
  if (c.inputs.size() != n)
    throw InvalidInput(command_name(c.command) + ": expected " + std::to_string(n) +
                       (n == 1 ? " polynomial" : " polynomials") + ", got " +
                       std::to_string(c.inputs.size()));
}

void do_real_roots(const CliConfig &c, Output &o) {
  require_inputs(c, 1);
  const RealPoly p = as_real(parse_poly(c.inputs[0]));
  json roots = json::array();
  for (const RootReport &r : real_roots(p, c.tol)) {
    roots.push_back(root_entry(r.value, r.multiplicity, r.residual));
    o.lines.push_back(with_multiplicity(short_number(r.value), r.multiplicity));
  }
  o.doc["roots"] = roots;
}

void do_complex_roots(const CliConfig &c, Output &o) {
  require_inputs(c, 1);
  const ComplexPoly p = as_complex(parse_poly(c.inputs[0]));
  json roots = json::array();
  for (const ComplexRootReport &r : complex_roots(p, c.tol)) {
    roots.push_back(root_entry(r.value, r.multiplicity, r.residual));
    o.lines.push_back(with_multiplicity(short_complex(r.value), r.multiplicity));
  }
  o.doc["roots"] = roots;
}

void do_solve_system(const CliConfig &c, Output &o) {
  require_inputs(c, 2);
  const BivarPoly p1 = as_bivar(parse_poly(c.inputs[0]));
  const BivarPoly p2 = as_bivar(parse_poly(c.inputs[1]));
  json solutions = json::array();
  for (const SolutionPoint &s : solve_system(p1, p2, c.tol).points) {
    solutions.push_back(
        {{"x", s.x}, {"y", s.y}, {"residual1", s.residual1}, {"residual2", s.residual2}});
    o.lines.push_back(short_number(s.x) + " " + short_number(s.y));
  }
  o.doc["solutions"] = solutions;
}

void do_nth_root(const CliConfig &c, Output &o) {
  if (!c.inputs.empty())
    throw InvalidInput("nth-root takes --a and --n, not a polynomial");
  const double v = nth_root(c.a, c.n, c.tol);
  const double residual = std::abs(std::pow(v, c.n) - c.a);
  o.doc["roots"] = json::array({root_entry(v, 1, residual)});
  o.lines.push_back(short_number(v));
}

void do_bound(const CliConfig &c, Output &o) {
  require_inputs(c, 1);
  const RealPoly p = as_real(parse_poly(c.inputs[0])).normalized(c.tol.zero_eps);
  const double b = root_bound(p);
  o.doc["bound"] = b;
  o.doc["roots"] = json::array();
  o.lines.push_back(short_number(b));
}

void do_multiplicity(const CliConfig &c, Output &o) {
  require_inputs(c, 1);
  if (c.at.empty())
    throw InvalidInput("multiplicity needs --at");
  const ParsedPoly parsed = parse_poly(c.inputs[0]);
  const cd at = parse_number(c.at);
  int m = 0;
  double residual = 0.0;
  if (at.imag() == 0.0 && !std::holds_alternative<ComplexPoly>(parsed)) {
    const RealPoly p = as_real(parsed).normalized(c.tol.zero_eps);
    m = multiplicity(p, at.real(), c.tol);
    residual = std::abs(eval(p, at.real()));
  } else {
    const ComplexPoly p = as_complex(parsed).normalized(c.tol.zero_eps);
    m = multiplicity(p, at, c.tol);
    residual = std::abs(eval(p, at));
  }
  o.doc["roots"] = json::array({root_entry(at, m, residual)});
  o.lines.push_back(std::to_string(m));
}

} // namespace

std::string command_name(Command c) {
  switch (c) {
  case Command::real_roots: return "real-roots";
  case Command::complex_roots: return "complex-roots";
  case Command::solve_system: return "solve-system";
  case Command::nth_root: return "nth-root";
  case Command::bound: return "bound";
  case Command::multiplicity: return "multiplicity";
  }
  return "?";
}

int run(const CliConfig &config, std::ostream &out, std::ostream &err) {
  Output o;
  o.doc["command"] = command_name(config.command);
  if (config.command == Command::nth_root) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "a=%.17g n=%d", config.a, config.n);
    o.doc["input"] = buf;
  } else if (config.inputs.size() == 1) {
    o.doc["input"] = config.inputs[0];
  } else {
    o.doc["input"] = config.inputs;
  }
  o.doc["warnings"] = json::array();

  try {
    config.tol.validate();
    switch (config.command) {
    case Command::real_roots: do_real_roots(config, o); break;
    case Command::complex_roots: do_complex_roots(config, o); break;
    case Command::solve_system: do_solve_system(config, o); break;
    case Command::nth_root: do_nth_root(config, o); break;
    case Command::bound: do_bound(config, o); break;
    case Command::multiplicity: do_multiplicity(config, o); break;
    }
  } catch (const InfiniteSolutions &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const IncompleteRootSet &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (config.format == Format::json) {
    out << o.doc.dump(2) << "\n";
  } else {
    for (const std::string &line : o.lines)
      out << line << "\n";
  }
  return 0;
}

namespace {

std::vector<std::string> read_lines(std::istream &in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      lines.push_back(line);
  }
  return lines;
}

} // namespace

int main_entry(int argc, const char *const *argv, std::istream &in, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Polynomial root finding: real roots, bivariate systems, complex roots."};
  app.name("solve");
  app.require_subcommand(1, 1);

  CliConfig config;
  std::string format = "text";
  std::string file;
  app.add_option("--tol", config.tol.root_tol, "bisection stopping width")->capture_default_str();
  app.add_option("--zero-eps", config.tol.zero_eps, "relative threshold for dropping leading coefficients")
      ->capture_default_str();
  app.add_option("--cluster-tol", config.tol.cluster_tol, "roots closer than this are merged")
      ->capture_default_str();
  app.add_option("--max-iter", config.tol.max_iter, "iteration cap")->capture_default_str();
  app.add_option("--residual-eps", config.tol.residual_eps, "relative residual that counts as zero")
      ->capture_default_str();
  app.add_option("--accept-eps", config.tol.accept_eps, "relative residual for accepting a solution")
      ->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--file", file, "read polynomials from a file, one per line");

  // One string option per slot: a vector option would let CLI11 split
  // "[a, b]" coefficient lists on their commas.
  std::string first, second;
  const auto with_inputs = [&](CLI::App *sub, const char *help, bool two = false) {
    sub->fallthrough();
    sub->add_option("polynomial", first, help);
    if (two)
      sub->add_option("second", second, "the other polynomial");
    return sub;
  };
  CLI::App *real = with_inputs(app.add_subcommand("real-roots", "real roots of a real polynomial"),
                               "polynomial, or - for stdin");
  CLI::App *cplx = with_inputs(app.add_subcommand("complex-roots", "all complex roots"),
                               "polynomial, or - for stdin");
  CLI::App *system = with_inputs(app.add_subcommand("solve-system", "real solutions of p1 = p2 = 0"),
                                 "polynomial in x and y, or - for stdin", true);
  CLI::App *bound = with_inputs(app.add_subcommand("bound", "bracketing bound for the real roots"),
                                "polynomial, or - for stdin");
  CLI::App *mult = with_inputs(app.add_subcommand("multiplicity", "multiplicity of a root"),
                               "polynomial, or - for stdin");
  mult->add_option("--at", config.at, "the root, real or complex")->required();
  CLI::App *nth = app.add_subcommand("nth-root", "positive solution of x^n = a");
  nth->fallthrough();
  nth->add_option("--a", config.a, "radicand")->required();
  nth->add_option("--n", config.n, "degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (*real)
    config.command = Command::real_roots;
  else if (*cplx)
    config.command = Command::complex_roots;
  else if (*system)
    config.command = Command::solve_system;
  else if (*bound)
    config.command = Command::bound;
  else if (*mult)
    config.command = Command::multiplicity;
  else
    config.command = Command::nth_root;
  config.format = format == "json" ? Format::json : Format::text;

  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) {
      err << "error: cannot open " << file << "\n";
      return 1;
    }
    for (std::string &line : read_lines(f))
      config.inputs.push_back(std::move(line));
  }
  bool stdin_used = false;
  std::vector<std::string> positional;
  for (const std::string *arg : {&first, &second})
    if (!arg->empty())
      positional.push_back(*arg);
  for (const std::string &arg : positional) {
    if (arg == "-") {
      if (stdin_used)
        continue;
      stdin_used = true;
      for (std::string &line : read_lines(in))
        config.inputs.push_back(std::move(line));
    } else {
      config.inputs.push_back(arg);
    }
  }
  if (config.inputs.empty() && file.empty() && config.command != Command::nth_root)
    config.inputs = read_lines(in);

  return run(config, out, err);
}

} // namespace polyroots::cli
