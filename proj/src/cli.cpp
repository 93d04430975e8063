#include "simps/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "simps/error.hpp"
#include "simps/fixtures.hpp"
#include "simps/pauli.hpp"
#include "simps/symmetry.hpp"
#include "simps/tensor_file.hpp"
#include "simps/wire.hpp"

namespace simps {

namespace {

// Failure with a fixed exit code, raised inside subcommands.
struct CliFailure {
  int code;
  std::string message;
};

struct Source {
  std::string path;
  std::string fixture;
  std::string fixture_dir;
};

TensorFile load_source(const Source& src) {
  try {
    if (!src.fixture.empty()) {
      return src.fixture_dir.empty() ? load_fixture_file(src.fixture)
                                     : load_fixture_file(src.fixture, src.fixture_dir);
    }
    if (src.path.empty()) throw CliFailure{kExitParse, "no input file given"};
    return read_tensor_file(src.path);
  } catch (const Error& e) {
    throw CliFailure{kExitParse, e.what()};
  }
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += fmt::format("{}{:.12f}", k ? ", " : "", v[k]);
  return s;
}

std::string join(const std::vector<std::size_t>& v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += fmt::format("{}{}", k ? sep : "", v[k]);
  return s;
}

StateVector evaluate(const Tensor& t, std::size_t n) {
  if (const auto* m = std::get_if<Mps>(&t)) return mps_evaluate_pbc(*m, n);
  return simps_evaluate_pbc(std::get<Simps>(t), n);
}

std::string describe(const Tensor& t) {
  if (const auto* m = std::get_if<Mps>(&t)) return fmt::format("mps, d = {}, D = {}", m->d(), m->bond_dim());
  const auto& s = std::get<Simps>(t);
  return fmt::format("simps, d = {}, chi = ({})", s.d(), join(s.chi(), ", "));
}

// ---- convert ----

struct ConvertOptions {
  Source src;
  std::string to;
  std::string output;
  std::string compare;
};

int cmd_convert(const ConvertOptions& opt, std::ostream& out, std::ostream& err) {
  const TensorFile in = load_source(opt.src);
  TensorFile result{in.tensor, in.metadata, std::nullopt};
  try {
    if (opt.to == "mps") {
      const auto* s = std::get_if<Simps>(&in.tensor);
      result.tensor = s ? simps_to_mps(*s) : in.tensor;
    } else {
      const auto* m = std::get_if<Mps>(&in.tensor);
      result.tensor = m ? simps_from_mps(*m) : in.tensor;
    }
  } catch (const Error& e) {
    throw CliFailure{kExitConversion, fmt::format("conversion failed: {}", e.what())};
  }

  nlohmann::ordered_json verification;
  verification["source"] = describe(in.tensor);
  verification["result"] = describe(result.tensor);
  nlohmann::ordered_json fids = nlohmann::ordered_json::object();
  double worst = 1.0;
  try {
    for (std::size_t n = 3; n <= 6; ++n) {
      const double f = fidelity(evaluate(in.tensor, n), evaluate(result.tensor, n));
      fids[std::to_string(n)] = f;
      worst = std::min(worst, f);
    }
  } catch (const Error& e) {
    throw CliFailure{kExitConversion, fmt::format("verification failed: {}", e.what())};
  }
  verification["fidelity"] = fids;
  if (!opt.compare.empty()) {
    const TensorFile ref = load_source({opt.compare, "", ""});
    const auto* a = std::get_if<Simps>(&result.tensor);
    const auto* b = std::get_if<Simps>(&ref.tensor);
    if (a == nullptr || b == nullptr) throw CliFailure{kExitUnsupported, "--compare needs two SIMPS"};
    try {
      const GaugeSolution g = solve_gauge(*a, *b);
      verification["gauge_residual"] = g.residual;
      err << fmt::format("solve_gauge residual: {:.3e}\n", g.residual);
    } catch (const Error& e) {
      verification["gauge_residual"] = std::string(e.what());
      err << fmt::format("solve_gauge failed: {}\n", e.what());
    }
  }
  result.verification = verification;
  if (worst < 1.0 - 1e-9) throw CliFailure{kExitConversion, fmt::format("state fidelity {} below tolerance", worst)};

  const std::string text = serialize_tensor_file(result);
  if (opt.output.empty() || opt.output == "-") {
    out << text;
  } else {
    try {
      write_tensor_file(opt.output, result);
    } catch (const Error& e) {
      throw CliFailure{kExitInternal, e.what()};
    }
  }
  return kExitOk;
}

// ---- analyze ----

struct AnalyzeOptions {
  Source src;
  bool normality = false;
  bool spectrum = false;
  bool symmetries = false;
  bool string_order = false;
  std::size_t max_n = 6;
  std::size_t string_n = 8;
};

std::string pattern_text(const BitMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += '/';
    for (auto b : m[i]) s += static_cast<char>('0' + b);
  }
  return s;
}

Simps as_simps(const Tensor& t) {
  if (const auto* s = std::get_if<Simps>(&t)) return *s;
  return simps_from_mps(std::get<Mps>(t));
}

int cmd_analyze(AnalyzeOptions opt, std::ostream& out) {
  const TensorFile in = load_source(opt.src);
  if (!(opt.normality || opt.spectrum || opt.symmetries || opt.string_order)) {
    opt.normality = opt.spectrum = opt.symmetries = opt.string_order = true;
  }
  out << "tensor: " << describe(in.tensor) << "\n";

  auto section = [&out](const char* name, const auto& body) {
    out << "[" << name << "]\n";
    try {
      body();
    } catch (const Error& e) {
      out << "SKIPPED: " << e.what() << "\n";
    }
  };

  if (opt.normality) {
    section("normality", [&] {
      const NormalityReport r = std::holds_alternative<Mps>(in.tensor) ? mps_normality(std::get<Mps>(in.tensor))
                                                                       : simps_normality(std::get<Simps>(in.tensor));
      const std::size_t last = r.span_dims.empty() ? 0 : r.span_dims.back().second;
      if (r.is_normal) {
        out << fmt::format("normal (injectivity length {}, span {} = {})\n", *r.injectivity_length, last, r.target);
      } else {
        out << fmt::format("not normal (span {} < {} at cap)\n", last, r.target);
      }
    });
  }
  if (opt.spectrum) {
    section("spectrum", [&] {
      const Mps m = std::holds_alternative<Mps>(in.tensor) ? std::get<Mps>(in.tensor)
                                                           : simps_to_mps(std::get<Simps>(in.tensor));
      out << join(transfer_spectrum(m)) << "\n";
    });
  }
  std::vector<BitMatrix> patterns;
  if (opt.symmetries || opt.string_order) {
    try {
      patterns = symmetry_classes(as_simps(in.tensor), opt.max_n);
    } catch (const Error& e) {
      if (opt.symmetries) out << "[symmetries]\nSKIPPED: " << e.what() << "\n";
      opt.symmetries = false;
      opt.string_order = false;
    }
  }
  if (opt.symmetries) {
    section("symmetries", [&] {
      out << fmt::format("{} non-trivial classes of sign patterns fixing the state for N = 3..{}\n", patterns.size(),
                         opt.max_n);
      for (const auto& p : patterns) {
        out << fmt::format("{} factorizable={}\n", pattern_text(p), is_factorizable(p) ? "yes" : "no");
      }
    });
  }
  if (opt.string_order) {
    section("string-order", [&] {
      const Simps s = as_simps(in.tensor);
      out << fmt::format("N = {}, sites 1..{}\n", opt.string_n, opt.string_n / 2);
      for (const auto& p : patterns) {
        std::string value;
        try {
          const auto u = DiagonalTwoSiteSymmetry::from_bits(p);
          const auto obs = make_string_order(s, u, 1, opt.string_n / 2, opt.string_n);
          const Complex v = string_order_expectation(s, obs, opt.string_n);
          value = fmt::format("{:.12f}{:+.12f}i", v.real(), v.imag());
        } catch (const Error& e) {
          value = fmt::format("SKIPPED: {}", e.what());
        }
        out << pattern_text(p) << " " << value << "\n";
      }
    });
  }
  return kExitOk;
}

// ---- wire ----

struct WireOptions {
  Source src;
  std::size_t n = 0;
  std::string outcomes;
  std::optional<std::uint64_t> sample_seed;
  std::string input_state;
};

std::vector<std::size_t> parse_outcomes(const std::string& text, std::size_t d) {
  std::vector<std::size_t> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        out.push_back(std::stoul(tok));
      } catch (const std::exception&) {
        throw CliFailure{kExitParse, fmt::format("bad outcome \"{}\"", tok)};
      }
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw CliFailure{kExitParse, fmt::format("bad outcome character '{}'", c)};
      out.push_back(static_cast<std::size_t>(c - '0'));
    }
  }
  for (std::size_t o : out) {
    if (o >= d) throw CliFailure{kExitParse, fmt::format("outcome {} out of range for d = {}", o, d)};
  }
  return out;
}

// "k" for a basis vector, "+" for the uniform superposition, or
// comma-separated amplitudes "re" / "re:im".
StateVector parse_input_state(const std::string& text, std::size_t chi) {
  const auto dim = static_cast<Eigen::Index>(chi);
  CVector v = CVector::Zero(dim);
  try {
    if (text.empty()) {
      v(0) = 1.0;
    } else if (text == "+") {
      v.setConstant(1.0);
    } else if (text.find(',') == std::string::npos) {
      const std::size_t k = std::stoul(text);
      if (k >= chi) throw CliFailure{kExitParse, "input basis index out of range"};
      v(static_cast<Eigen::Index>(k)) = 1.0;
    } else {
      std::stringstream ss(text);
      std::string tok;
      Eigen::Index k = 0;
      while (std::getline(ss, tok, ',')) {
        if (k >= dim) throw CliFailure{kExitParse, "too many input amplitudes"};
        const auto colon = tok.find(':');
        const double re = std::stod(tok.substr(0, colon));
        const double im = colon == std::string::npos ? 0.0 : std::stod(tok.substr(colon + 1));
        v(k++) = Complex(re, im);
      }
      if (k != dim) throw CliFailure{kExitParse, "too few input amplitudes"};
    }
  } catch (const std::invalid_argument&) {
    throw CliFailure{kExitParse, fmt::format("bad input state \"{}\"", text)};
  } catch (const std::out_of_range&) {
    throw CliFailure{kExitParse, fmt::format("bad input state \"{}\"", text)};
  }
  if (v.norm() == 0.0) throw CliFailure{kExitParse, "input state is zero"};
  return StateVector({chi}, v / v.norm());
}

int cmd_wire(const WireOptions& opt, std::ostream& out) {
  const TensorFile in = load_source(opt.src);
  const auto* s = std::get_if<Simps>(&in.tensor);
  if (s == nullptr) throw CliFailure{kExitUnsupported, "wire needs a SIMPS file"};
  const auto chi = s->uniform_chi();
  if (!chi) throw CliFailure{kExitUnsupported, "wire needs uniform chi"};

  MeasurementRecord rec;
  if (opt.sample_seed) {
    if (opt.n == 0) throw CliFailure{kExitParse, "--sample needs --n"};
    rec = sample_outcomes(*s, opt.n, *opt.sample_seed, 1).front();
  } else {
    rec.outcomes = parse_outcomes(opt.outcomes, s->d());
    if (opt.n != 0 && rec.outcomes.size() != opt.n) {
      throw CliFailure{kExitParse, fmt::format("--n {} but {} outcomes given", opt.n, rec.outcomes.size())};
    }
    if (rec.outcomes.empty()) throw CliFailure{kExitParse, "no outcomes given"};
  }
  const StateVector input = parse_input_state(opt.input_state, *chi);
  const WireResult w = measure_bulk(*s, rec);
  out << "outcomes: " << join(rec.outcomes, s->d() > 10 ? "," : "") << "\n";
  out << fmt::format("probability: {:.12e}\n", w.probability);
  if (!w.boundary_defined) {
    out << "byproduct: undefined (zero-weight outcome)\n";
    return kExitOk;
  }
  if (w.byproduct) {
    out << "byproduct: " << pauli_label(*w.byproduct) << "\n";
    out << fmt::format("decoded bits: x={} z={}\n", w.decoded_bits->first, w.decoded_bits->second);
  } else {
    out << "byproduct: non-Pauli\n";
  }
  const std::vector<double> spec = schmidt_spectrum(w.boundary_state, 1);
  out << fmt::format("boundary entanglement: {:.12f} bits\n", entropy_bits(spec));
  const TeleportResult t = teleport(*s, input, rec);
  if (!t.wire_ok) out << "warning: NotAWire (tensors are not proportional to unitaries)\n";
  out << fmt::format("teleportation fidelity: {:.12f}\n", t.fidelity);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"split-index MPS toolkit"};
  app.require_subcommand(1);
  std::string fixture_dir;
  app.add_option("--fixture-dir", fixture_dir, "Directory searched by --fixture");

  auto add_source = [&](CLI::App* sub, Source& src) {
    sub->add_option("input", src.path, "Tensor file");
    sub->add_option("--fixture", src.fixture, "Load a named fixture instead of a file");
  };

  ConvertOptions conv;
  auto* convert = app.add_subcommand("convert", "Convert between MPS and SIMPS");
  add_source(convert, conv.src);
  convert->add_option("--to", conv.to, "Target representation")->required()->check(CLI::IsMember({"mps", "simps"}));
  convert->add_option("-o,--output", conv.output, "Output file (default stdout)");
  convert->add_option("--compare", conv.compare, "Reference SIMPS for a gauge-equivalence check");

  AnalyzeOptions ana;
  auto* analyze = app.add_subcommand("analyze", "Report normality, spectrum, symmetries, string order");
  add_source(analyze, ana.src);
  analyze->add_flag("--normality", ana.normality);
  analyze->add_flag("--spectrum", ana.spectrum);
  analyze->add_flag("--symmetries", ana.symmetries);
  analyze->add_flag("--string-order", ana.string_order);
  analyze->add_option("--max-n", ana.max_n, "Largest chain for the symmetry search")->check(CLI::Range(3, 12));
  analyze->add_option("--string-n", ana.string_n, "Chain length for string order")->check(CLI::Range(4, 14));

  WireOptions wire_opt;
  std::uint64_t seed = 0;
  auto* wire = app.add_subcommand("wire", "Measure the bulk and teleport through the boundary");
  add_source(wire, wire_opt.src);
  wire->add_option("--n", wire_opt.n, "Number of bulk sites");
  auto* outcomes_opt = wire->add_option("--outcomes", wire_opt.outcomes, "Outcome string, e.g. 0110");
  auto* sample_opt = wire->add_option("--sample", seed, "Sample outcomes with this seed");
  outcomes_opt->excludes(sample_opt);
  wire->add_option("--input-state", wire_opt.input_state, "k, + or comma-separated re[:im] amplitudes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*convert) {
      conv.src.fixture_dir = fixture_dir;
      return cmd_convert(conv, out, err);
    }
    if (*analyze) {
      ana.src.fixture_dir = fixture_dir;
      return cmd_analyze(ana, out);
    }
    wire_opt.src.fixture_dir = fixture_dir;
    if (sample_opt->count() > 0) wire_opt.sample_seed = seed;
    if (outcomes_opt->count() == 0 && !wire_opt.sample_seed) {
      throw CliFailure{kExitParse, "wire needs --outcomes or --sample"};
    }
    return cmd_wire(wire_opt, out);
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
        return kExitParse;
      case ErrorKind::UnsupportedBoundary:
        return kExitUnsupported;
      default:
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace simps
