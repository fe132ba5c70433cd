#pragma once

// Command-line driver. run() is kept in a header so that tests can call it
// in-process with their own streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "quatem/quatem.hpp"

namespace quatem::cli {

inline constexpr int schema_version = 1;

enum exit_code : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_config = 2,
  exit_criterion = 3,
  exit_precondition = 4,
};

using json = nlohmann::ordered_json;

inline char const* const column_help =
    "File formats\n"
    "  mesh            ASCII OFF, triangles only, closed and outward oriented\n"
    "  field CSV       x,y,z,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im\n"
    "  trace CSV       triangle,e1_re,e1_im,e2_re,e2_im,e3_re,e3_im,\n"
    "                  h1_re,h1_im,h2_re,h2_im,h3_re,h3_im\n"
    "                  one row per surface node, in node order\n"
    "  quadrature CSV  x,y,z,w\n"
    "  kernel CSV      r,x,y,z,theta_re,theta_im,u0_re,u0_im,u1_re,u1_im,\n"
    "                  u2_re,u2_im,u3_re,u3_im\n"
    "Complex numbers are written as 1.5, 2i, -i, 1+0.3i or 1e-2-4i.\n"
    "Exit codes: 0 ok, 2 bad configuration, 3 criterion failed,\n"
    "4 numerical precondition violated.\n";

// ---------------------------------------------------------------------------
// Parsing helpers

inline ComplexScalar parse_complex(std::string s) {
  std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  static std::regex const re(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?$)");
  static std::regex const pure_imag(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]$)");
  std::smatch m;
  if (s.empty()) throw config_error("empty complex number");
  if (std::regex_match(s, m, pure_imag)) {
    double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -v : v};
  }
  if (std::regex_match(s, m, re) && m[1].matched) {
    double const re_part = std::stod(m[1].str());
    double im_part = 0;
    if (m[2].matched) {
      im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im_part = -im_part;
    }
    return {re_part, im_part};
  }
  throw config_error("cannot parse complex number '" + s + "'");
}

inline std::vector<double> parse_list(std::string const& s, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument(cell);
    } catch (std::exception const&) {
      throw config_error("'" + cell + "' is not a number");
    }
  }
  return out;
}

inline Vec3 parse_vec3(std::string const& s) {
  auto const v = parse_list(s);
  if (v.size() != 3) throw config_error("expected x,y,z but got '" + s + "'");
  return {v[0], v[1], v[2]};
}

/// "x,y,z;x,y,z;..."
inline std::vector<Vec3> parse_points(std::string const& s) {
  std::vector<Vec3> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_vec3(item));
  if (out.empty()) throw config_error("no points given");
  return out;
}

inline Sign parse_sign(std::string const& s) {
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  throw config_error("sign must be + or -, got '" + s + "'");
}

inline json to_json(ComplexScalar z) { return json::array({z.real(), z.imag()}); }

inline json to_json(ComplexQuaternion const& q) {
  json a = json::array();
  for (std::size_t k = 0; k < 4; ++k) a.push_back(to_json(q[k]));
  return a;
}

inline json to_json(Vec3 const& p) { return json::array({p.x, p.y, p.z}); }

// ---------------------------------------------------------------------------
// Shared option groups

struct MeshArgs {
  std::string path;
  double radius = 1.0;
  int level = 3;
  std::string rule = "centroid";

  void add(CLI::App& app) {
    app.add_option("--mesh", path, "OFF mesh file (overrides --radius/--level)");
    app.add_option("--radius", radius, "sphere radius")->capture_default_str();
    app.add_option("--level", level, "icosphere refinement level")->capture_default_str();
    app.add_option("--rule", rule, "surface rule: centroid or three-point")
        ->capture_default_str();
  }

  SurfaceRule surface_rule() const {
    if (rule == "centroid") return SurfaceRule::centroid;
    if (rule == "three-point") return SurfaceRule::three_point;
    throw config_error("unknown surface rule '" + rule + "'");
  }

  SurfaceMesh build() const {
    if (!path.empty()) {
      auto in = io::open_input(path);
      return io::read_off(in, surface_rule());
    }
    if (!(radius > 0)) throw config_error("radius must be positive");
    if (level < 0) throw config_error("level must be >= 0");
    return build_sphere_mesh(radius, level, surface_rule());
  }
};

struct MediumArgs {
  double omega = 1.0;
  std::string eps = "1", mu = "1", beta = "0.25";
  std::string branch = "upper";

  void add(CLI::App& app) {
    app.add_option("--omega", omega, "angular frequency")->capture_default_str();
    app.add_option("--eps", eps, "permittivity (complex)")->capture_default_str();
    app.add_option("--mu", mu, "permeability (complex)")->capture_default_str();
    app.add_option("--beta", beta, "chirality (complex)")->capture_default_str();
    app.add_option("--branch", branch, "square-root branch: upper or lower")
        ->capture_default_str();
  }

  ChiralMedium build() const {
    RootBranch b;
    if (branch == "upper") b = RootBranch::upper;
    else if (branch == "lower") b = RootBranch::lower;
    else throw config_error("branch must be upper or lower");
    return make_medium(omega, parse_complex(eps), parse_complex(mu), parse_complex(beta), b);
  }

  json describe(ChiralMedium const& m) const {
    json j;
    j["omega"] = m.omega();
    j["epsilon"] = to_json(m.epsilon());
    j["mu"] = to_json(m.mu());
    j["beta"] = to_json(m.beta());
    j["branch"] = branch;
    j["k"] = to_json(m.k());
    j["alpha1"] = to_json(m.alpha1());
    j["alpha2"] = to_json(m.alpha2());
    return j;
  }
};

class Output {
 public:
  Output(std::string const& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(io::open_output(path));
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

inline void write_json(std::string const& path, std::ostream& out, json const& j) {
  Output o(path, out);
  o.stream() << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Commands

inline int gen_mesh(MeshArgs const& mesh_args, std::vector<double> const& scale,
                    std::string const& output, std::ostream& out, std::ostream& log) {
  SurfaceMesh mesh = mesh_args.build();
  if (!scale.empty()) {
    if (scale.size() != 3) throw config_error("--scale needs three factors");
    mesh = scale_mesh(mesh, {scale[0], scale[1], scale[2]});
  }
  Output o(output, out);
  io::write_off(o.stream(), mesh);
  log << "gen-mesh: " << mesh.vertices().size() << " vertices, " << mesh.size()
      << " triangles, spacing " << mesh.spacing() << '\n';
  return exit_ok;
}

struct FieldArgs {
  std::string family = "abc";
  std::string lambda = "1";
  std::string target = "surface";
  std::string component = "E";
  int radial_order = 0;
};

inline AnalyticField pick_field(FieldArgs const& a, std::optional<ChiralMedium> const& m) {
  if (a.family == "abc") return abc_beltrami(parse_complex(a.lambda));
  if (a.family == "polynomial") return sample_vector_polynomial();
  if (a.family == "scalar") return coordinate_field(0);
  if (a.family == "chiral") {
    auto const s = exact_chiral_solution(*m);
    if (a.component == "E") return s.E;
    if (a.component == "H") return s.H;
    if (a.component == "Phi") return s.Phi;
    if (a.component == "Psi") return s.Psi;
    throw config_error("component must be E, H, Phi or Psi");
  }
  throw config_error("unknown family '" + a.family + "'");
}

inline int gen_field(MeshArgs const& mesh_args, MediumArgs const& medium_args,
                     FieldArgs const& a, std::string const& output, std::ostream& out,
                     std::ostream& log) {
  std::optional<ChiralMedium> medium;
  if (a.family == "chiral") medium = medium_args.build();
  if (a.target != "surface" && a.target != "volume")
    throw config_error("target must be surface or volume");

  Output o(output, out);
  io::set_precision(o.stream());
  if (a.family == "chiral" && a.target == "surface") {
    auto const mesh = mesh_args.build();
    auto const traces = BoundaryTraces::sample(mesh, exact_chiral_solution(*medium));
    io::write_traces_csv(o.stream(), traces);
    log << "gen-field: chiral traces at " << traces.e.size() << " surface nodes, k = "
        << medium->k() << '\n';
    return exit_ok;
  }
  auto const field = pick_field(a, medium);
  std::vector<Vec3> points;
  if (a.target == "surface") {
    auto const mesh = mesh_args.build();
    for (auto const& n : mesh.nodes()) points.push_back(n.position);
  } else {
    if (!mesh_args.path.empty())
      throw config_error("volume target uses --radius/--level, not --mesh");
    auto const q = build_ball_quadrature(mesh_args.radius, mesh_args.level, a.radial_order);
    points.assign(q.nodes().begin(), q.nodes().end());
  }
  o.stream() << io::field_csv_header << '\n';
  for (auto const& p : points) io::write_field_row(o.stream(), p, field(p));
  log << "gen-field: " << field.family() << " at " << points.size() << ' ' << a.target
      << " points\n";
  return exit_ok;
}

struct ProbeArgs {
  std::string alpha = "1";
  std::string sign = "+";
  std::string direction = "1,0,0";
  double r_min = 0.1, r_max = 2.0;
  int samples = 20;
};

inline int kernel_probe(ProbeArgs const& a, std::string const& output, std::ostream& out,
                        std::ostream& log) {
  ComplexScalar const alpha = parse_complex(a.alpha);
  Sign const sign = parse_sign(a.sign);
  Vec3 const d = parse_vec3(a.direction);
  if (!(norm(d) > 0)) throw config_error("direction must be nonzero");
  if (!(a.r_min > 0) || !(a.r_max >= a.r_min)) throw config_error("need 0 < r-min <= r-max");
  if (a.samples < 1) throw config_error("samples must be >= 1");
  Vec3 const u = normalized(d);
  Output o(output, out);
  io::set_precision(o.stream());
  o.stream() << "r,x,y,z,theta_re,theta_im,u0_re,u0_im,u1_re,u1_im,u2_re,u2_im,u3_re,u3_im\n";
  for (int s = 0; s < a.samples; ++s) {
    double const r = a.samples == 1 ? a.r_min
                                    : a.r_min + (a.r_max - a.r_min) * s / (a.samples - 1);
    Vec3 const x = r * u;
    ComplexScalar const th = theta(alpha, x);
    auto const up = upsilon(alpha, sign, x);
    o.stream() << r << ',' << x.x << ',' << x.y << ',' << x.z << ',' << th.real() << ','
               << th.imag();
    for (std::size_t k = 0; k < 4; ++k) o.stream() << ',' << up[k].real() << ',' << up[k].imag();
    o.stream() << '\n';
  }
  log << "kernel-probe: " << a.samples << " samples on r in [" << a.r_min << ", " << a.r_max
      << "], alpha = " << alpha << '\n';
  return exit_ok;
}

inline std::vector<Vec3> default_probes() {
  return {{0.05, 0.1, -0.08}, {0.3, 0.05, 0.1}, {0.1, -0.25, 0.2},
          {0.1, 0.2, -0.3}, {-0.35, 0.1, 0.15}};
}

struct BpArgs {
  std::string levels = "2,3,4";
  std::string alpha = "1";
  std::string sign = "+";
  std::string fields = "scalar,vector,beltrami";
  std::string probes;
  double radius = 1.0;
  int radial_order = 0;
  double exclusion_factor = TeodorescuOptions{}.exclusion_factor;
  double min_distance_factor = CauchyOptions{}.min_distance_factor;
  double slack = 0.1;
};

inline int verify_bp(BpArgs const& a, std::string const& output, std::ostream& out,
                     std::ostream& log) {
  ComplexScalar const alpha = parse_complex(a.alpha);
  Sign const sign = parse_sign(a.sign);
  std::vector<int> levels;
  for (double v : parse_list(a.levels)) {
    if (v != std::floor(v) || v < 0) throw config_error("levels must be integers >= 0");
    levels.push_back(static_cast<int>(v));
  }
  if (levels.empty()) throw config_error("no levels given");
  auto const probes = a.probes.empty() ? default_probes() : parse_points(a.probes);

  std::vector<std::pair<std::string, AnalyticField>> fields;
  std::stringstream fs(a.fields);
  std::string name;
  while (std::getline(fs, name, ',')) {
    if (name == "scalar") fields.emplace_back(name, coordinate_field(0));
    else if (name == "vector") fields.emplace_back(name, sample_vector_polynomial());
    // Null solution of D + alpha (or D - alpha).
    else if (name == "beltrami")
      fields.emplace_back(name, abc_beltrami(-to_double(sign) * alpha));
    else throw config_error("unknown field '" + name + "'");
  }
  if (fields.empty()) throw config_error("no fields given");

  BorelPompeiuOptions opt;
  opt.teodorescu.exclusion_factor = a.exclusion_factor;
  opt.cauchy.min_distance_factor = a.min_distance_factor;

  json report;
  report["schema_version"] = schema_version;
  report["command"] = "verify-bp";
  report["alpha"] = to_json(alpha);
  report["sign"] = sign == Sign::plus ? "+" : "-";
  report["radius"] = a.radius;
  report["exclusion_factor"] = a.exclusion_factor;
  report["min_distance_factor"] = a.min_distance_factor;
  json jp = json::array();
  for (auto const& p : probes) jp.push_back(to_json(p));
  report["probes"] = jp;
  json jf = json::array();
  for (auto const& f : fields) jf.push_back(f.first);
  report["fields"] = jf;

  json rows = json::array();
  std::vector<double> maxima;
  for (int level : levels) {
    auto const mesh = build_sphere_mesh(a.radius, level);
    auto const quad = build_ball_quadrature(a.radius, level, a.radial_order);
    json row;
    row["level"] = level;
    row["spacing"] = mesh.spacing();
    row["surface_nodes"] = mesh.nodes().size();
    row["volume_nodes"] = quad.size();
    json res;
    double worst = 0;
    for (auto const& [fname, field] : fields) {
      BorelPompeiuCheck const check(field, alpha, sign, mesh, quad, opt);
      json col = json::array();
      for (auto const& p : probes) {
        double const r = check.residual(p);
        worst = std::max(worst, r);
        col.push_back(r);
      }
      res[fname] = col;
    }
    row["residuals"] = res;
    row["max_residual"] = worst;
    maxima.push_back(worst);
    rows.push_back(row);
  }
  report["levels"] = rows;
  json ratios = json::array();
  bool decreasing = true;
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    ratios.push_back(maxima[i] > 0 ? maxima[i - 1] / maxima[i] : 0.0);
    if (!(maxima[i] < (1 + a.slack) * maxima[i - 1])) decreasing = false;
  }
  report["reduction_ratios"] = ratios;
  report["slack"] = a.slack;
  report["decreasing"] = decreasing;
  write_json(output, out, report);

  log << "verify-bp: max residual";
  for (std::size_t i = 0; i < levels.size(); ++i)
    log << " L" << levels[i] << '=' << maxima[i];
  log << (decreasing ? ", decreasing" : ", NOT decreasing") << '\n';
  return decreasing ? exit_ok : exit_criterion;
}

inline BoundaryTraces load_traces(std::string const& path, SurfaceMesh const& mesh) {
  if (path.empty()) throw config_error("--traces is required");
  auto in = io::open_input(path);
  return io::read_traces_csv(in, mesh);
}

struct ReconstructArgs {
  std::string traces;
  std::string probes = "0,0,0";
  std::string path = "direct";
  double min_distance_factor = CauchyOptions{}.min_distance_factor;
};

inline int reconstruct(MeshArgs const& mesh_args, MediumArgs const& medium_args,
                       ReconstructArgs const& a, std::string const& output,
                       std::ostream& out, std::ostream& log) {
  auto const medium = medium_args.build();
  auto const mesh = mesh_args.build();
  auto const traces = load_traces(a.traces, mesh);
  auto const probes = parse_points(a.probes);
  if (a.path != "direct" && a.path != "split")
    throw config_error("path must be direct or split");
  RepresentationOptions opt;
  opt.cauchy.min_distance_factor = a.min_distance_factor;

  json report;
  report["schema_version"] = schema_version;
  report["command"] = "reconstruct";
  report["medium"] = medium_args.describe(medium);
  report["path"] = a.path;
  report["surface_nodes"] = mesh.nodes().size();
  json pts = json::array();
  for (auto const& x : probes) {
    auto const v = a.path == "direct" ? reconstruct_EH(traces, std::nullopt, medium, x, opt)
                                      : reconstruct_via_split(traces, std::nullopt, medium, x, opt);
    json p;
    p["x"] = to_json(x);
    p["E"] = to_json(v.e);
    p["H"] = to_json(v.h);
    pts.push_back(p);
  }
  report["points"] = pts;
  write_json(output, out, report);
  log << "reconstruct: E, H at " << probes.size() << " points from " << traces.e.size()
      << " trace nodes (" << a.path << ")\n";
  return exit_ok;
}

struct ExtendArgs {
  std::string traces;
  double perturb = 0;
  std::uint64_t seed = 42;
  double threshold = 0.05;
  double depth_factor = ExtendibilityOptions{}.depth_factor;
  double depth = 0;
  int extrapolation_order = ExtendibilityOptions{}.extrapolation_order;
  bool points = false;
};

inline int extend_check(MeshArgs const& mesh_args, MediumArgs const& medium_args,
                        ExtendArgs const& a, std::string const& output, std::ostream& out,
                        std::ostream& log) {
  auto const medium = medium_args.build();
  auto const mesh = mesh_args.build();
  auto traces = load_traces(a.traces, mesh);
  if (a.perturb < 0) throw config_error("--perturb must be >= 0");
  if (!(a.threshold > 0)) throw config_error("--threshold must be positive");
  if (a.perturb > 0) traces = perturb_tangential(traces, a.perturb, a.seed);

  ExtendibilityOptions opt;
  opt.depth_factor = a.depth_factor;
  opt.extrapolation_order = a.extrapolation_order;
  auto const r = extendibility_residual(traces, medium, a.depth, opt);
  bool const pass = r.combined.rms < a.threshold;

  auto agg = [](ExtendibilityAggregate const& g) {
    json j;
    j["max"] = g.max;
    j["rms"] = g.rms;
    return j;
  };
  json report;
  report["schema_version"] = schema_version;
  report["command"] = "extend-check";
  report["medium"] = medium_args.describe(medium);
  report["triangles"] = mesh.size();
  report["spacing"] = r.spacing;
  report["depth"] = r.depth;
  report["extrapolation_order"] = r.extrapolation_order;
  report["perturb"] = a.perturb;
  report["seed"] = a.seed;
  report["trace_scale"] = r.trace_scale;
  report["residual_e"] = agg(r.e);
  report["residual_h"] = agg(r.h);
  report["residual"] = agg(r.combined);
  std::size_t deep = 0;
  for (auto const& p : r.points) deep += p.too_deep;
  report["too_deep_points"] = deep;
  report["threshold"] = a.threshold;
  report["extendible"] = pass;
  if (a.points) {
    json pts = json::array();
    for (auto const& p : r.points) {
      json j;
      j["triangle"] = p.triangle;
      j["offset_point"] = to_json(p.offset_point);
      j["residual_e"] = p.residual_e;
      j["residual_h"] = p.residual_h;
      j["residual"] = p.residual;
      j["scalar_part"] = p.scalar_part;
      pts.push_back(j);
    }
    report["points"] = pts;
  }
  write_json(output, out, report);
  log << "extend-check: rms residual " << r.combined.rms << " (max " << r.combined.max
      << ") " << (pass ? "<" : ">=") << " threshold " << a.threshold << ": "
      << (pass ? "extendible" : "not extendible") << '\n';
  return pass ? exit_ok : exit_criterion;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& log) {
  CLI::App app{"Complex quaternionic integral operators for chiral Maxwell fields",
               "quatem-cli"};
  app.footer(column_help);
  app.require_subcommand(1);
  std::string output = "-";

  MeshArgs mesh_args;
  MediumArgs medium_args;

  auto* c_mesh = app.add_subcommand("gen-mesh", "write an icosphere (or scaled) OFF mesh");
  std::vector<double> scale;
  mesh_args.add(*c_mesh);
  c_mesh->add_option("--scale", scale, "axis scale factors sx sy sz (ellipsoid)")
      ->expected(3)
      ->delimiter(',');
  c_mesh->add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();

  FieldArgs field_args;
  auto* c_field = app.add_subcommand(
      "gen-field", "sample a test field on surface nodes or volume quadrature nodes");
  mesh_args.add(*c_field);
  medium_args.add(*c_field);
  c_field->add_option("--family", field_args.family, "abc, polynomial, scalar or chiral")
      ->capture_default_str();
  c_field->add_option("--lambda", field_args.lambda, "abc parameter (complex)")
      ->capture_default_str();
  c_field->add_option("--target", field_args.target, "surface or volume")->capture_default_str();
  c_field->add_option("--component", field_args.component,
                      "chiral volume component: E, H, Phi or Psi")
      ->capture_default_str();
  c_field->add_option("--radial-order", field_args.radial_order,
                      "volume radial Gauss order, 0 = level default")
      ->capture_default_str();
  c_field->add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();

  ProbeArgs probe_args;
  auto* c_probe = app.add_subcommand("kernel-probe", "theta and upsilon along a ray");
  c_probe->add_option("--alpha", probe_args.alpha, "wavenumber (complex)")->capture_default_str();
  c_probe->add_option("--sign", probe_args.sign, "+ or -")->capture_default_str();
  c_probe->add_option("--direction", probe_args.direction, "ray direction x,y,z")
      ->capture_default_str();
  c_probe->add_option("--r-min", probe_args.r_min, "first radius")->capture_default_str();
  c_probe->add_option("--r-max", probe_args.r_max, "last radius")->capture_default_str();
  c_probe->add_option("--samples", probe_args.samples, "number of radii")->capture_default_str();
  c_probe->add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();

  BpArgs bp_args;
  auto* c_bp = app.add_subcommand("verify-bp", "Borel-Pompeiu residual across refinement levels");
  c_bp->add_option("--levels", bp_args.levels, "comma-separated levels")->capture_default_str();
  c_bp->add_option("--alpha", bp_args.alpha, "wavenumber (complex)")->capture_default_str();
  c_bp->add_option("--sign", bp_args.sign, "+ or -")->capture_default_str();
  c_bp->add_option("--fields", bp_args.fields, "scalar, vector, beltrami")->capture_default_str();
  c_bp->add_option("--probes", bp_args.probes, "x,y,z;x,y,z;... (default: five fixed points)");
  c_bp->add_option("--radius", bp_args.radius, "ball radius")->capture_default_str();
  c_bp->add_option("--radial-order", bp_args.radial_order,
                   "volume radial Gauss order, 0 = level default")
      ->capture_default_str();
  c_bp->add_option("--exclusion-factor", bp_args.exclusion_factor,
                   "volume nodes closer than this times their spacing are skipped")
      ->capture_default_str();
  c_bp->add_option("--min-distance-factor", bp_args.min_distance_factor,
                   "probes must be this many mesh spacings from the surface")
      ->capture_default_str();
  c_bp->add_option("--slack", bp_args.slack, "allowed relative increase between levels")
      ->capture_default_str();
  c_bp->add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();

  ReconstructArgs rec_args;
  auto* c_rec = app.add_subcommand("reconstruct", "E and H at interior points from traces");
  mesh_args.add(*c_rec);
  medium_args.add(*c_rec);
  c_rec->add_option("--traces", rec_args.traces, "trace CSV")->required();
  c_rec->add_option("--probes", rec_args.probes, "x,y,z;x,y,z;...")->capture_default_str();
  c_rec->add_option("--path", rec_args.path, "direct (E/H kernels) or split (Phi/Psi)")
      ->capture_default_str();
  c_rec->add_option("--min-distance-factor", rec_args.min_distance_factor,
                    "probes must be this many mesh spacings from the surface")
      ->capture_default_str();
  c_rec->add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();

  ExtendArgs ext_args;
  auto* c_ext = app.add_subcommand(
      "extend-check", "test whether traces extend to a Maxwell solution inside");
  mesh_args.add(*c_ext);
  medium_args.add(*c_ext);
  c_ext->add_option("--traces", ext_args.traces, "trace CSV")->required();
  c_ext->add_option("--perturb", ext_args.perturb, "relative tangential noise added first")
      ->capture_default_str();
  c_ext->add_option("--seed", ext_args.seed, "noise seed")->capture_default_str();
  c_ext->add_option("--threshold", ext_args.threshold, "pass if rms residual is below")
      ->capture_default_str();
  c_ext->add_option("--depth-factor", ext_args.depth_factor, "offset depth in mesh spacings")
      ->capture_default_str();
  c_ext->add_option("--depth", ext_args.depth, "absolute offset depth, 0 = use --depth-factor")
      ->capture_default_str();
  c_ext->add_option("--extrapolation-order", ext_args.extrapolation_order,
                    "order of the extrapolation towards the surface")
      ->capture_default_str();
  c_ext->add_flag("--points", ext_args.points, "include per-triangle residuals");
  c_ext->add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();

  std::vector<std::string> argv_store{"quatem-cli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char const*> argv;
  for (auto const& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, log);
      return exit_ok;
    }
    log << "error: " << e.what() << '\n';
    return exit_config;
  }

  try {
    if (c_mesh->parsed()) return gen_mesh(mesh_args, scale, output, out, log);
    if (c_field->parsed())
      return gen_field(mesh_args, medium_args, field_args, output, out, log);
    if (c_probe->parsed()) return kernel_probe(probe_args, output, out, log);
    if (c_bp->parsed()) return verify_bp(bp_args, output, out, log);
    if (c_rec->parsed()) return reconstruct(mesh_args, medium_args, rec_args, output, out, log);
    if (c_ext->parsed()) return extend_check(mesh_args, medium_args, ext_args, output, out, log);
  } catch (config_error const& e) {
    log << "error: " << e.what() << '\n';
    return exit_config;
  } catch (precondition_error const& e) {
    log << "error: " << e.what() << '\n';
    return exit_precondition;
  } catch (std::exception const& e) {
    log << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_config;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& log = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, log);
}

}  // namespace quatem::cli
