#include "cli.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "branecalc/bwb.hpp"
#include "branecalc/errors.hpp"
#include "branecalc/localize.hpp"
#include "branecalc/rootsys.hpp"
#include "branecalc/tensorrep.hpp"

namespace branecalc::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string format = "table";
  unsigned jobs = 1;
  bool timings = false;
};

// What a command hands back: its echoed inputs, the result payload, a table
// renderer for that payload, and any file contents that feed the digest.
struct Report {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  json timings = json::object();
  std::string digest_extra;
  std::function<void(std::ostream&, const json&)> table;
};

class Stopwatch {
 public:
  Stopwatch(Report& report, bool enabled) : report_(report), enabled_(enabled) {}
  template <typename F>
  auto step(const char* name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, start);
    } else {
      auto value = f();
      record(name, start);
      return value;
    }
  }

 private:
  void record(const char* name, std::chrono::steady_clock::time_point start) {
    if (!enabled_) return;
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    report_.timings[name] = std::round(ms.count() * 1000.0) / 1000.0;
  }
  Report& report_;
  bool enabled_;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw ConsistencyError("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::vector<std::int64_t> parse_ints(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    std::int64_t value = 0;
    const char* first = item.data();
    if (!item.empty() && item[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw InputError(std::string(what) + ": '" + text + "' is not a comma-separated list of integers", "syntax");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

// 1-based Levi indices on the command line, 0-based inside.
ParabolicSubset parse_levi(const std::string& text, int rank) {
  ParabolicSubset q;
  for (auto i : parse_ints(text, "--levi")) {
    if (i < 1 || i > rank) {
      throw InputError("Levi index " + std::to_string(i) + " outside [1.." + std::to_string(rank) + "]");
    }
    q.levi.push_back(static_cast<int>(i - 1));
  }
  return q;
}

Weight parse_weight(const std::string& text, const char* what, int rank) {
  Weight w(parse_ints(text, what));
  if (static_cast<int>(w.size()) != rank) {
    throw InputError(std::string(what) + " has " + std::to_string(w.size()) + " coordinates, rank is " +
                     std::to_string(rank), "rank_mismatch");
  }
  return w;
}

json to_json(const Weight& w) {
  json a = json::array();
  for (std::size_t i = 0; i < w.size(); ++i) a.push_back(w[i]);
  return a;
}

json to_json(const LatticeVector& v) { return json(v); }

// Integers that fit stay JSON numbers; larger ones become decimal strings.
json to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

std::string text_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_number_integer(); })) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + j[i].dump();
    return s + ")";
  }
  return j.dump();
}

void row(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(20) << key << value << '\n';
}

json levi_json(const ParabolicSubset& q) {
  json a = json::array();
  for (int i : q.levi) a.push_back(i + 1);
  return a;
}

struct GroupArgs {
  std::string type;
  int rank = 0;
  std::string levi;

  void add_to(CLI::App* cmd, bool with_levi) {
    cmd->add_option("--type", type, "Root-system type: A..G, optionally with the rank (G2, E8)")->required();
    cmd->add_option("--rank", rank, "Rank (may be omitted when the type names it)");
    if (with_levi) cmd->add_option("--levi", levi, "Comma-separated 1-based Levi indices; omitted means Borel");
  }
  RootSystem build() {
    if (rank == 0 && type.size() > 1) {
      int embedded = 0;
      auto [ptr, ec] = std::from_chars(type.data() + 1, type.data() + type.size(), embedded);
      if (ec == std::errc() && ptr == type.data() + type.size()) rank = embedded;
    }
    return build_root_system(parse_family(type, rank), rank);
  }
  void echo(json& inputs, const RootSystem& rs) const {
    inputs["type"] = rs.name();
    inputs["rank"] = rs.rank();
  }
};

// --- commands -------------------------------------------------------------

void cmd_roots(GroupArgs& g, Stopwatch& sw, Report& r) {
  const RootSystem rs = sw.step("build", [&] { return g.build(); });
  g.echo(r.inputs, rs);
  r.result["positive_root_count"] = rs.positive_roots().size();
  r.result["rho"] = to_json(rho(rs));
  json cartan = json::array();
  for (const auto& line : rs.cartan_matrix()) cartan.push_back(line);
  r.result["cartan_matrix"] = cartan;
  json roots = json::array();
  for (const auto& a : rs.positive_roots()) roots.push_back(to_json(a));
  r.result["positive_roots"] = roots;
  r.table = [](std::ostream& out, const json& res) {
    row(out, "positive roots", res["positive_root_count"].dump());
    row(out, "rho", text_of(res["rho"]));
    out << "cartan matrix\n";
    for (const auto& line : res["cartan_matrix"]) {
      out << " ";
      for (const auto& x : line) out << std::right << std::setw(4) << x.get<long>();
      out << '\n';
    }
    out << "positive roots (fundamental-weight coordinates)\n";
    for (const auto& a : res["positive_roots"]) out << "  " << text_of(a) << '\n';
  };
}

void cmd_strings(GroupArgs& g, const std::string& mu_text, const std::string& lambda_text, Stopwatch& sw,
                 Report& r) {
  const RootSystem rs = g.build();
  const ParabolicSubset q = parse_levi(g.levi, rs.rank());
  const Weight mu = parse_weight(mu_text, "--mu", rs.rank());
  const Weight lambda = parse_weight(lambda_text, "--lambda", rs.rank());
  g.echo(r.inputs, rs);
  r.inputs["levi"] = levi_json(q);
  r.inputs["mu"] = to_json(mu);
  r.inputs["lambda"] = to_json(lambda);
  const auto res = sw.step("bwb", [&] { return string_space_line_bundles(rs, q, mu, lambda); });
  r.result["xi"] = to_json(lambda - mu);
  r.result["vanishes"] = res.vanishes_identically;
  if (!res.vanishes_identically) {
    r.result["ghost_number"] = res.degree;
    r.result["dimension"] = to_json(res.dimension);
    r.result["highest_weight"] = to_json(res.highest_weight);
  }
  r.table = [](std::ostream& out, const json& res) {
    row(out, "xi = lambda - mu", text_of(res["xi"]));
    if (res["vanishes"].get<bool>()) {
      out << "vanishes: all ghost numbers vanish (xi + rho is singular)\n";
      return;
    }
    row(out, "ghost number k", res["ghost_number"].dump());
    row(out, "dimension", text_of(res["dimension"]));
    row(out, "highest weight", text_of(res["highest_weight"]));
  };
}

void cmd_ext_bundles(GroupArgs& g, const std::string& alpha_text, const std::string& beta_text,
                     std::optional<std::size_t> k, Stopwatch& sw, Report& r) {
  const RootSystem rs = g.build();
  const ParabolicSubset q = parse_levi(g.levi, rs.rank());
  const Weight alpha = parse_weight(alpha_text, "--alpha", rs.rank());
  const Weight beta = parse_weight(beta_text, "--beta", rs.rank());
  g.echo(r.inputs, rs);
  r.inputs["levi"] = levi_json(q);
  r.inputs["alpha"] = to_json(alpha);
  r.inputs["beta"] = to_json(beta);
  if (k) r.inputs["k"] = *k;
  sw.step("ext", [&] {
    json dims = json::array();
    for (std::size_t p = 0; p <= rs.positive_roots().size(); ++p)
      dims.push_back(to_json(ext_dim_vector_bundles(rs, q, alpha, beta, p)));
    if (k) {
      r.result["k"] = *k;
      r.result["dimension"] = *k < dims.size() ? dims[*k] : json(0);
    }
    r.result["dimensions_by_degree"] = dims;
  });
  r.table = [](std::ostream& out, const json& res) {
    if (res.contains("k")) row(out, "dim Ext^" + res["k"].dump(), text_of(res["dimension"]));
    out << "dim Ext^k by degree\n";
    const auto& dims = res["dimensions_by_degree"];
    for (std::size_t p = 0; p < dims.size(); ++p) out << "  k=" << p << "  " << text_of(dims[p]) << '\n';
  };
}

void cmd_tensor(GroupArgs& g, const std::string& alpha_text, const std::string& beta_text, Stopwatch& sw,
                Report& r) {
  const RootSystem rs = g.build();
  const ParabolicSubset q = parse_levi(g.levi, rs.rank());
  const Weight alpha = parse_weight(alpha_text, "--alpha", rs.rank());
  const Weight beta = parse_weight(beta_text, "--beta", rs.rank());
  g.echo(r.inputs, rs);
  if (!g.levi.empty()) r.inputs["levi"] = levi_json(q);
  r.inputs["alpha"] = to_json(alpha);
  r.inputs["beta"] = to_json(beta);
  const Subsystem sys = g.levi.empty() ? Subsystem(rs) : Subsystem(rs, q);
  const auto d = sw.step("klimyk", [&] { return tensor_decompose(sys, alpha, beta); });
  // Largest summand first; equal dimensions by descending highest weight.
  std::vector<std::tuple<mpz_class, Weight, std::int64_t>> rows;
  for (const auto& [nu, m] : d.summands) rows.emplace_back(sys.weyl_dimension(nu), nu, m);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::get<1>(a) > std::get<1>(b);
  });
  json summands = json::array();
  mpz_class total = 0;
  for (const auto& [dim, nu, m] : rows) {
    total += m * dim;
    summands.push_back(json{{"highest_weight", to_json(nu)}, {"multiplicity", m}, {"dimension", to_json(dim)}});
  }
  r.result["summands"] = summands;
  r.result["total_dimension"] = to_json(total);
  r.table = [](std::ostream& out, const json& res) {
    out << std::left << std::setw(20) << "highest weight" << std::setw(14) << "multiplicity" << "dimension\n";
    for (const auto& s : res["summands"]) {
      out << std::left << std::setw(20) << text_of(s["highest_weight"]) << std::setw(14) << s["multiplicity"].dump()
          << text_of(s["dimension"]) << '\n';
    }
    row(out, "total dimension", text_of(res["total_dimension"]));
  };
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read fan file '" + path + "'", "io");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ToricArgs {
  std::string fan_path;
  std::string divisor;
  std::string direction;
  bool check_lattice = false;
};

void cmd_toric_index(const ToricArgs& a, const Globals& globals, Stopwatch& sw, Report& r) {
  const std::string text = read_file(a.fan_path);
  r.digest_extra = text;
  const FanFile file = sw.step("parse", [&] { return parse_fan_file(text); });
  const Fan& fan = file.fan;
  r.inputs["fan"] = a.fan_path;

  std::optional<std::vector<std::int64_t>> divisor;
  if (!a.divisor.empty()) {
    divisor = parse_ints(a.divisor, "--divisor");
  } else if (file.divisor) {
    divisor = file.divisor;
  }
  EquivBundleAtFixedPoints bundle;
  if (divisor) {
    if (divisor->size() != fan.rays.size()) {
      throw InputError("divisor has " + std::to_string(divisor->size()) + " coefficients, fan has " +
                       std::to_string(fan.rays.size()) + " rays", "rank_mismatch");
    }
    r.inputs["divisor"] = *divisor;
    bundle = bundle_from_divisor(fan, *divisor).at_fixed_points();
  } else if (file.bundle_fixed_weights) {
    r.inputs["bundle"] = "bundle_fixed_weights";
    bundle = *file.bundle_fixed_weights;
  } else {
    throw InputError("no bundle: pass --divisor or put 'divisor' or 'bundle_fixed_weights' in the fan file");
  }

  LocalizationOptions options;
  options.jobs = globals.jobs;
  if (!a.direction.empty()) {
    options.direction = GenericDirection{parse_ints(a.direction, "--direction")};
    r.inputs["direction"] = options.direction->v;
  }
  if (a.check_lattice) r.inputs["check_lattice"] = true;

  LocalizationResult loc;
  try {
    loc = sw.step("localize", [&] { return localization_index(fan, bundle, options); });
  } catch (const GenericityError& e) {
    // A user-supplied direction that is not generic is an input problem.
    if (options.direction) throw InputError(e.what(), e.code());
    throw;
  }
  mpq_class index = loc.index;
  index.canonicalize();
  if (index.get_den() != 1) {
    throw ConsistencyError("localization index " + index.get_str() + " is not an integer", "non_integer_index");
  }
  r.result["index"] = to_json(index.get_num());
  r.result["rank"] = bundle.rank();
  r.result["direction"] = loc.direction.v;
  json points = json::array();
  const auto fps = fixed_points(fan);
  for (std::size_t x = 0; x < fps.size(); ++x) {
    json weights = json::array();
    for (const auto& w : bundle.fiber_weights[fps[x].cone_index]) weights.push_back(to_json(w));
    points.push_back(json{{"cone", fan.max_cones[fps[x].cone_index]},
                          {"isotropy_weights", fps[x].isotropy_weights},
                          {"fiber_weights", weights},
                          {"term", to_string(loc.terms[x])}});
  }
  r.result["fixed_points"] = points;

  if (a.check_lattice) {
    json lattice = json::object();
    if (!divisor) {
      lattice["status"] = "SKIPPED";
      lattice["reason"] = "bundle given by fixed-point weights, not by a divisor";
    } else if (!is_nef(fan, *divisor)) {
      lattice["status"] = "SKIPPED";
      lattice["reason"] = "divisor is not nef";
    } else {
      const ExpSum points_char = sw.step("lattice", [&] { return lattice_point_character(fan, *divisor); });
      const mpz_class count = points_char.total();
      lattice["count"] = to_json(count);
      lattice["status"] = count == index.get_num() ? "AGREE" : "DISAGREE";
    }
    r.result["lattice"] = lattice;
  }
  r.table = [](std::ostream& out, const json& res) {
    row(out, "index", text_of(res["index"]));
    row(out, "bundle rank", res["rank"].dump());
    row(out, "direction", text_of(res["direction"]));
    out << "fixed points\n";
    for (const auto& p : res["fixed_points"]) {
      out << "  cone " << text_of(p["cone"]) << "  weights";
      for (const auto& w : p["fiber_weights"]) out << ' ' << text_of(w);
      out << "  term " << p["term"].get<std::string>() << '\n';
    }
    if (res.contains("lattice")) {
      const auto& l = res["lattice"];
      if (l["status"] == "SKIPPED") {
        row(out, "lattice oracle", "SKIPPED (" + l["reason"].get<std::string>() + ")");
      } else {
        row(out, "lattice oracle", text_of(l["count"]) + "  " + l["status"].get<std::string>());
      }
    }
  };
}

void cmd_toric_points(const ToricArgs& a, Stopwatch& sw, Report& r) {
  const std::string text = read_file(a.fan_path);
  r.digest_extra = text;
  const FanFile file = sw.step("parse", [&] { return parse_fan_file(text); });
  const Fan& fan = file.fan;
  r.inputs["fan"] = a.fan_path;
  std::optional<EquivLineBundle> line;
  std::optional<std::vector<std::int64_t>> divisor;
  if (!a.divisor.empty()) {
    divisor = parse_ints(a.divisor, "--divisor");
  } else if (file.divisor) {
    divisor = file.divisor;
  }
  if (divisor) {
    r.inputs["divisor"] = *divisor;
    line = bundle_from_divisor(fan, *divisor);
  }
  r.result["dim"] = fan.dim;
  r.result["complete"] = fan.complete;
  json points = json::array();
  for (const auto& p : fixed_points(fan)) {
    json rays = json::array();
    for (std::size_t idx : fan.max_cones[p.cone_index]) rays.push_back(fan.rays[idx]);
    json entry{{"cone", fan.max_cones[p.cone_index]}, {"rays", rays}, {"isotropy_weights", p.isotropy_weights}};
    if (line) entry["local_weight"] = line->local_weights[p.cone_index];
    points.push_back(entry);
  }
  r.result["fixed_points"] = points;
  if (divisor) r.result["nef"] = fan.complete ? json(is_nef(fan, *divisor)) : json(nullptr);
  r.table = [](std::ostream& out, const json& res) {
    row(out, "dimension", res["dim"].dump());
    row(out, "complete", res["complete"].get<bool>() ? "yes" : "no");
    if (res.contains("nef") && !res["nef"].is_null()) row(out, "divisor nef", res["nef"].get<bool>() ? "yes" : "no");
    for (const auto& p : res["fixed_points"]) {
      out << "cone " << text_of(p["cone"]) << "  rays";
      for (const auto& v : p["rays"]) out << ' ' << text_of(v);
      out << "  isotropy";
      for (const auto& w : p["isotropy_weights"]) out << ' ' << text_of(w);
      if (p.contains("local_weight")) out << "  m " << text_of(p["local_weight"]);
      out << '\n';
    }
  };
}

void emit(const Report& r, const Globals& g, std::ostream& out) {
  json inputs = r.inputs;
  inputs["sha256"] = sha256_hex(r.command + '\n' + r.inputs.dump() + '\n' + r.digest_extra);
  if (g.format == "json") {
    json doc{{"command", r.command}, {"inputs", inputs}, {"result", r.result}, {"timings_ms", r.timings}};
    out << doc.dump(2) << '\n';
    return;
  }
  out << r.command;
  for (const auto& [k, v] : r.inputs.items()) out << ' ' << k << '=' << text_of(v);
  out << '\n';
  r.table(out, r.result);
  if (g.timings) {
    for (const auto& [k, v] : r.timings.items()) row(out, "time " + k + " (ms)", v.dump());
  }
}

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int fail(std::ostream& err, int code, const std::string& reason, const std::string& message) {
  err << "error: " << reason << ": " << one_line(message) << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact brane invariants on flag manifolds and toric varieties", "branecalc"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--jobs", globals.jobs, "Worker threads for localization")->check(CLI::PositiveNumber);
  app.add_flag("--timings", globals.timings, "Record per-step wall time in milliseconds");

  GroupArgs group;
  std::string mu, lambda, alpha, beta;
  std::optional<std::size_t> k;
  ToricArgs toric;

  auto* roots = app.add_subcommand("roots", "Positive roots, rho and the Cartan matrix");
  group.add_to(roots, false);

  auto* strings = app.add_subcommand("strings", "Ext between line-bundle branes on G/Q");
  group.add_to(strings, true);
  strings->add_option("--mu", mu, "Source weight, comma-separated")->required();
  strings->add_option("--lambda", lambda, "Target weight, comma-separated")->required();

  auto* ext = app.add_subcommand("ext-bundles", "Ext between irreducible vector-bundle branes on G/Q");
  group.add_to(ext, true);
  ext->add_option("--alpha", alpha, "Levi highest weight of the source")->required();
  ext->add_option("--beta", beta, "Levi highest weight of the target")->required();
  ext->add_option("--k", k, "Ghost number; all degrees are listed regardless");

  auto* tensor = app.add_subcommand("tensor", "Decompose a tensor product of irreducibles");
  group.add_to(tensor, true);
  tensor->add_option("--alpha", alpha, "First highest weight")->required();
  tensor->add_option("--beta", beta, "Second highest weight")->required();

  auto* index = app.add_subcommand("toric-index", "Index of a bundle brane by fixed-point localization");
  index->add_option("fan", toric.fan_path, "Fan file (JSON)")->required();
  index->add_option("--divisor", toric.divisor, "Divisor coefficients, one per ray (overrides the file)");
  index->add_option("--direction", toric.direction, "One-parameter direction v, comma-separated");
  index->add_flag("--check-lattice", toric.check_lattice, "Compare with the lattice-point count (nef divisors)");

  auto* points = app.add_subcommand("toric-points", "Fixed points, isotropy weights and local divisor weights");
  points->add_option("fan", toric.fan_path, "Fan file (JSON)")->required();
  points->add_option("--divisor", toric.divisor, "Divisor coefficients, one per ray");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, kInvalidInput, "usage", e.what());
  }

  Report report;
  Stopwatch sw(report, globals.timings);
  try {
    if (roots->parsed()) {
      report.command = "roots";
      cmd_roots(group, sw, report);
    } else if (strings->parsed()) {
      report.command = "strings";
      cmd_strings(group, mu, lambda, sw, report);
    } else if (ext->parsed()) {
      report.command = "ext-bundles";
      cmd_ext_bundles(group, alpha, beta, k, sw, report);
    } else if (tensor->parsed()) {
      report.command = "tensor";
      cmd_tensor(group, alpha, beta, sw, report);
    } else if (index->parsed()) {
      report.command = "toric-index";
      cmd_toric_index(toric, globals, sw, report);
    } else {
      report.command = "toric-points";
      cmd_toric_points(toric, sw, report);
    }
    std::ostringstream buffer;
    emit(report, globals, buffer);
    out << buffer.str();
    // A lattice disagreement is an oracle failure, reported after the data.
    if (report.result.contains("lattice") && report.result["lattice"]["status"] == "DISAGREE") {
      return fail(err, kConsistencyFailure, "oracle_disagreement", "localization index differs from the lattice-point count");
    }
    return kSuccess;
  } catch (const InputError& e) {
    return fail(err, kInvalidInput, e.code(), e.what());
  } catch (const DomainError& e) {
    return fail(err, kInvalidInput, e.code(), e.what());
  } catch (const Error& e) {
    return fail(err, kConsistencyFailure, e.code(), e.what());
  } catch (const std::exception& e) {
    return fail(err, kConsistencyFailure, "internal", e.what());
  }
}

}  // namespace branecalc::cli
