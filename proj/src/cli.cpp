#include "hakimkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hakimkit/constraint.hpp"
#include "hakimkit/dynamics.hpp"
#include "hakimkit/error.hpp"
#include "hakimkit/format.hpp"
#include "hakimkit/mapspec.hpp"

namespace hakimkit {

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& flag) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw UsageError(flag + ": not a number: \"" + text + "\"");
  return v;
}

// "re,im"
Complex parse_complex(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw UsageError(flag + ": expected \"re,im\", got \"" + text + "\"");
  return {parse_number(text.substr(0, comma), flag), parse_number(text.substr(comma + 1), flag)};
}

// "re,im:half" or "re,im:half_x,half_y"
Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--window: expected \"re,im:half[,half_y]\"");
  Window w;
  w.center = parse_complex(text.substr(0, colon), "--window");
  const std::string halves = text.substr(colon + 1);
  const auto comma = halves.find(',');
  w.half_x = parse_number(halves.substr(0, comma), "--window");
  w.half_y = comma == std::string::npos ? w.half_x : parse_number(halves.substr(comma + 1), "--window");
  return w;
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--res: expected WxH");
  const double w = parse_number(text.substr(0, x), "--res");
  const double h = parse_number(text.substr(x + 1), "--res");
  if (w != std::floor(w) || h != std::floor(h) || w < 1 || h < 1 || w > 1e5 || h > 1e5)
    throw UsageError("--res: width and height must be positive integers");
  return {static_cast<int>(w), static_cast<int>(h)};
}

Slice parse_slice(const std::string& kind, const std::string& value) {
  const std::string k = trim(kind);
  Slice s;
  if (k == "w=u*z")
    s.kind = SliceKind::direction;
  else if (k == "w=w0")
    s.kind = SliceKind::fixed_w;
  else if (k == "z=z0")
    s.kind = SliceKind::fixed_z;
  else
    throw UsageError("--slice: expected \"w=u*z\", \"w=w0\" or \"z=z0\"");
  s.value = parse_complex(value, "--u");
  return s;
}

std::string fixed6(Complex x) {
  if (std::abs(x.imag()) <= 1e-12 * std::max(1.0, std::abs(x.real()))) return fmt::format("{:.6f}", x.real());
  return fmt::format("{:.6f}{:+.6f}i", x.real(), x.imag());
}

MapSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read map spec \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_mapspec(buffer.str());
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write \"" + path + "\"");
  body(out);
  if (!out) throw UsageError("write to \"" + path + "\" failed");
}

void header(std::ostream& out, const std::string& command, const MapSpec& spec) {
  out << "hakimkit " << command << ": form " << to_string(spec.form) << ", domain " << to_string(spec.domain())
      << ", truncation " << spec.truncation << "\n";
}

// Runs `fn` with the spec's coefficient type.
template <typename Fn>
int with_domain(const MapSpec& spec, Fn&& fn) {
  if (spec.domain() == Domain::exact) return fn(GaussianRational{});
  return fn(Complex{});
}

template <CoefficientField S>
std::string scalar_text(const S& x) {
  return format_scalar(x);
}

void print_directions(std::ostream& out, const std::vector<CharacteristicDirection>& dirs) {
  out << fmt::format("{:<28} {:<15} {:<24} {:<24} {}\n", "direction", "kind", "lambda", "A", "mult");
  for (const auto& d : dirs) {
    const std::string lambda = d.exact ? d.exact->lambda.to_string() : format_complex(d.lambda, 10);
    std::string a = "-";
    if (d.index) a = d.exact && d.exact->index ? d.exact->index->to_string() : format_complex(*d.index, 10);
    out << fmt::format("{:<28} {:<15} {:<24} {:<24} {}\n", direction_label(d), to_string(d.kind), lambda, a,
                       d.multiplicity);
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string map_path;
};

int cmd_directions(Context& c) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "directions", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto f = tangent_map<S>(spec);
    c.out << "order " << order(f) << "\n";
    print_directions(c.out, directions(f));
    return exit_ok;
  });
}

int cmd_index(Context& c, const std::string& slope, bool infinity) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "index", spec);
  if (slope.empty() == !infinity) throw UsageError("index: give exactly one of --slope re,im or --infinity");
  const Complex u0 = infinity ? Complex{} : parse_complex(slope, "--slope");
  return with_domain(spec, [&]<typename S>(S) {
    const auto f = tangent_map<S>(spec);
    for (const auto& d : directions(f)) {
      const bool match = infinity ? d.chart == Chart::infinity
                                  : d.chart == Chart::finite && std::abs(d.slope - u0) <= 1e-8 * (1 + std::abs(u0));
      if (!match) continue;
      if (!d.is_non_degenerate()) throw MapError(direction_label(d) + " is degenerate; A is not defined");
      c.out << "A" << direction_label(d) << " = " << format_complex(index(f, d), 15);
      if (d.exact && d.exact->index) c.out << " (exact " << d.exact->index->to_string() << ")";
      c.out << "\n";
      return exit_ok;
    }
    throw MapError("no characteristic direction " + (infinity ? std::string("(0,1)") : "(1," + slope + ")"));
  });
}

int cmd_verify_prop2(Context& c) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "verify-prop2", spec);
  if (spec.domain() != Domain::exact) throw MapError("verify-prop2 needs the exact domain");
  const auto m = axes_fixing_map<GaussianRational>(spec);
  const auto v = verify_prop2(m);
  if (!v.k) {
    c.out << "not applicable: " << v.reason << "\n";
    return exit_ok;
  }
  const int k = *v.k;
  c.out << "k = " << k << "; " << v.reason << "\n";
  if (!v.applicable) c.out << "not applicable: the checks below are informational\n";
  c.out << "exact identity: " << (v.exact_identity ? "PASS" : "FAIL") << "; numeric: ";
  if (!v.numeric_available) {
    c.out << "unavailable (" << v.numeric_note << ")\n";
  } else if (v.indices.empty()) {
    c.out << v.numeric_note << "\n";
  } else {
    for (std::size_t i = 0; i < v.indices.size(); ++i) {
      const auto& ic = v.indices[i];
      const std::string label = ic.direction.chart == Chart::infinity
                                    ? std::string("inf")
                                    : (ic.direction.exact ? ic.direction.exact->slope.to_string()
                                                          : format_complex(ic.direction.slope, 10));
      if (i > 0) c.out << "; ";
      c.out << "A(" << label << ")=" << fixed6(ic.index) << " target " << -(k + 1) << ": "
            << (ic.pass ? "PASS" : "FAIL");
    }
    c.out << "\n";
  }
  for (const auto& mm : v.identity_mismatches)
    c.out << "  identity mismatch at u^" << mm.power << ": " << mm.lhs.to_string() << " vs " << mm.rhs.to_string()
          << "\n";
  if (v.falsified()) {
    c.err << "FALSIFICATION: the relation holds but A(theta) = -(k+1) failed\n";
    return exit_falsified;
  }
  return exit_ok;
}

int cmd_pde_residual(Context& c) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "pde-residual", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto m = axes_fixing_map<S>(spec);
    const auto r = pde_residual(m);
    c.out << "residual (through degree " << r.trunc() << "): " << to_string(r) << "\n";
    c.out << (r.is_zero() ? "zero" : "nonzero") << ", max |coefficient| " << format_double(max_magnitude(r)) << "\n";
    return exit_ok;
  });
}

int cmd_relation_check(Context& c) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "relation-check", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto report = relation_check(axes_fixing_map<S>(spec));
    if (!report.series_order) {
      c.out << report.window_note << "\n";
      return exit_ok;
    }
    c.out << "k = " << *report.series_order << "; window " << report.window_note << "\n";
    c.out << "pde residual " << (report.residual_zero ? "zero" : "nonzero") << " (max |coefficient| "
          << format_double(report.residual_norm) << ")\n";
    for (const auto& v : report.violations)
      c.out << fmt::format("violation at (alpha, beta) = ({}, {}): d_{{{},{}}} = {}, expected {}\n", v.alpha, v.beta,
                           v.alpha - 1, v.beta, scalar_text(v.lhs), scalar_text(v.rhs));
    c.out << (report.clean() ? "clean" : std::to_string(report.violations.size()) + " violation(s)") << "\n";
    return exit_ok;
  });
}

int cmd_complete_h(Context& c, int trunc, const std::string& out_path) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "complete-h", spec);
  if (spec.domain() != Domain::exact) throw MapError("complete-h needs the exact domain");
  if (spec.form != MapForm::gh) throw MapError("complete-h needs a gh spec (g, plus axis terms of h)");
  const auto m = axes_fixing_map<GaussianRational>(spec);
  if (trunc < 0) trunc = m.trunc();
  if (trunc > m.trunc()) throw UsageError("--trunc exceeds the spec truncation");
  const auto axis = axis_coefficients(truncate(m.h(), trunc));
  const auto h = complete_h(truncate(m.g(), trunc), axis, trunc);
  const ExactAxesFixingMap completed(truncate(m.g(), trunc), h);
  c.out << "h = " << to_string(h) << "\n";
  c.out << "pde residual: " << (pde_residual(completed).is_zero() ? "zero" : "NONZERO") << "\n";
  if (!out_path.empty()) {
    write_file(out_path, [&](std::ostream& o) { o << serialize_mapspec(make_mapspec(completed)); });
    c.out << "wrote " << out_path << "\n";
  }
  return exit_ok;
}

int cmd_jacobian(Context& c) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "jacobian", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto f = tangent_map<S>(spec);
    const auto det = jacobian_det(f);
    c.out << "det DF (through degree " << det.trunc() << "): " << to_string(det) << "\n";
    if (spec.form == MapForm::gh) {
      const auto m = axes_fixing_map<S>(spec);
      const auto defect = jacobian_defect(m);
      c.out << "det DF - exp(w g + z h): " << to_string(defect) << "\n";
      c.out << "identity " << (defect.is_zero() ? "holds" : "fails") << " through degree " << defect.trunc() << "\n";
    }
    return exit_ok;
  });
}

Point point_of(const std::string& z, const std::string& w) { return {parse_complex(z, "--z"), parse_complex(w, "--w")}; }

int cmd_classify_fixed(Context& c, const std::string& z, const std::string& w, bool locate) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "classify-fixed", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto f = to_float(tangent_map<S>(spec));
    Point p = point_of(z, w);
    if (locate) p = locate_fixed_point(f, p);
    const auto cls = classify_fixed_point(f, p);
    c.out << "point (" << format_complex(p(0), 15) << ", " << format_complex(p(1), 15) << ")\n";
    c.out << "kind " << to_string(cls.kind) << "\n";
    c.out << "eigenvalues " << format_complex(cls.eigenvalues(0), 12) << ", " << format_complex(cls.eigenvalues(1), 12)
          << "\n";
    c.out << "det DF " << format_complex(cls.determinant, 12) << "\n";
    if constexpr (is_exact_v<S>) {
      if (spec.form == MapForm::gh && pde_residual(axes_fixing_map<S>(spec)).is_zero()) {
        const auto report = no_attracting_fixed_points_check(axes_fixing_map<S>(spec), {p});
        const auto& pc = report.points.front();
        c.out << "no-attracting check (" << (pc.on_axis ? "axis point, |eigenvalue - 1|" : "off-axis, |det DF - 1|")
              << " = " << format_double(pc.defect) << "): " << (pc.pass ? "PASS" : "FAIL") << "\n";
      }
    }
    return exit_ok;
  });
}

int cmd_recenter(Context& c, const std::string& z, const std::string& w, const std::string& out_path) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "recenter", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto g = recenter(to_float(tangent_map<S>(spec)), point_of(z, w));
    c.out << "p = " << to_string(g.p()) << "\n";
    c.out << "q = " << to_string(g.q()) << "\n";
    if (!out_path.empty()) {
      write_file(out_path, [&](std::ostream& o) { o << serialize_mapspec(make_mapspec(g)); });
      c.out << "wrote " << out_path << "\n";
    }
    return exit_ok;
  });
}

struct OrbitFlags {
  int max_iter = OrbitOptions{}.max_iter;
  double r_conv = OrbitOptions{}.r_conv;
  double r_escape = OrbitOptions{}.r_escape;

  OrbitOptions options(bool record) const {
    OrbitOptions o;
    o.max_iter = max_iter;
    o.r_conv = r_conv;
    o.r_escape = r_escape;
    o.record_points = record;
    return o;
  }
};

int cmd_orbit(Context& c, const std::string& z, const std::string& w, const OrbitFlags& flags,
              const std::string& out_path) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "orbit", spec);
  return with_domain(spec, [&]<typename S>(S) {
    const auto rec = iterate_orbit(tangent_map<S>(spec), point_of(z, w), flags.options(!out_path.empty()));
    c.out << "outcome " << to_string(rec.outcome) << " after " << rec.iterations_used << " iterations\n";
    c.out << "last (" << format_complex(rec.last(0), 12) << ", " << format_complex(rec.last(1), 12) << ")\n";
    if (rec.tangent_estimate) {
      const Point& t = *rec.tangent_estimate;
      const std::string dir = std::abs(t(0)) >= std::abs(t(1)) ? "(1," + format_complex(t(1) / t(0), 8) + ")"
                                                                : "(" + format_complex(t(0) / t(1), 8) + ",1)";
      c.out << "tangent " << dir << "\n";
    }
    if (!out_path.empty()) {
      write_file(out_path, [&](std::ostream& o) { write_orbit_csv(o, {rec}); });
      c.out << "wrote " << out_path << " (" << rec.points.size() << " points)\n";
    }
    return exit_ok;
  });
}

int cmd_basin(Context& c, const std::string& slice_kind, const std::string& value, const std::string& window,
              const std::string& res, const OrbitFlags& flags, int threads, const std::string& out_path) {
  const auto spec = load_spec(c.map_path);
  header(c.out, "basin", spec);
  const Slice slice = parse_slice(slice_kind, value);
  const Window win = parse_window(window);
  const auto [width, height] = parse_resolution(res);
  if (threads < 0) throw UsageError("--threads must be >= 0");
  return with_domain(spec, [&]<typename S>(S) {
    const auto f = tangent_map<S>(spec);
    const auto start = std::chrono::steady_clock::now();
    const auto raster = render_basin(to_float(f), slice, win, width, height, {flags.options(false), threads});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.out << "slice " << slice.label() << "; window center " << format_complex(win.center) << ", half-extents "
          << format_double(win.half_x) << " x " << format_double(win.half_y) << "; " << width << "x" << height
          << "; max_iter " << flags.max_iter << "; polynomial model truncated at degree " << spec.truncation << "\n";
    const double total = static_cast<double>(raster.pixels.size());
    for (auto o : {OrbitOutcome::converged_to_origin, OrbitOutcome::converged_elsewhere, OrbitOutcome::escaped,
                   OrbitOutcome::undecided}) {
      const auto n = raster.count(o);
      c.out << fmt::format("{:<20} {:>8} ({:.1f}%)\n", to_string(o), n, 100.0 * n / total);
    }
    std::vector<CharacteristicDirection> dirs;
    try {
      dirs = directions(f);
    } catch (const Error& e) {
      c.out << "tangent histogram unavailable: " << e.what() << "\n";
    }
    if (!dirs.empty()) {
      const auto hist = tangent_statistics(raster, dirs);
      for (const auto& b : hist.bins)
        if (b.count > 0) c.out << "tangent " << direction_label(b.direction) << ": " << b.count << "\n";
      c.out << "tangent unmatched: " << hist.unmatched << "\n";
    }
    c.out << fmt::format("time {:.2f} s\n", seconds);
    if (!out_path.empty()) {
      write_file(out_path, [&](std::ostream& o) { write_ppm(o, raster); });
      c.out << "wrote " << out_path << "\n";
    }
    return exit_ok;
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic directions, Hakim indices and basins of maps tangent to the identity", "hakimkit"};
  app.require_subcommand(1);

  std::string map_path, slope, z, w, out_path, slice_kind = "w=u*z", slice_value = "1,0", window, res = "64x64";
  bool infinity = false, locate = false;
  int trunc = -1, threads = 0;
  OrbitFlags orbit;

  auto add_map = [&](CLI::App* sub) { sub->add_option("--map", map_path, "map spec (JSON)")->required(); };
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--z", z, "z coordinate \"re,im\"")->required();
    sub->add_option("--w", w, "w coordinate \"re,im\"")->required();
  };
  auto add_orbit = [&](CLI::App* sub) {
    sub->add_option("--max-iter", orbit.max_iter, "iteration cap");
    sub->add_option("--r-conv", orbit.r_conv, "convergence radius");
    sub->add_option("--r-escape", orbit.r_escape, "escape radius");
  };

  std::map<std::string, std::function<int(Context&)>> run;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int(Context&)> fn) {
    auto* s = app.add_subcommand(name, help);
    add_map(s);
    run[name] = std::move(fn);
    return s;
  };

  sub("directions", "characteristic directions of the leading part", cmd_directions);
  auto* idx = sub("index", "Hakim index of one direction", [&](Context& c) { return cmd_index(c, slope, infinity); });
  idx->add_option("--slope", slope, "direction (1, u0) as \"re,im\"");
  idx->add_flag("--infinity", infinity, "direction (0, 1)");
  sub("verify-prop2", "check A = -(k+1) exactly and numerically", cmd_verify_prop2);
  sub("pde-residual", "volume-form PDE residual of (g, h)", cmd_pde_residual);
  sub("relation-check", "coefficient relation between g and h", cmd_relation_check);
  auto* ch = sub("complete-h", "solve the PDE for h given g and the axis terms of h",
                 [&](Context& c) { return cmd_complete_h(c, trunc, out_path); });
  ch->add_option("--trunc", trunc, "truncation order (default: the spec's)");
  ch->add_option("--out", out_path, "write the completed gh spec");
  sub("jacobian", "Jacobian determinant series", cmd_jacobian);
  auto* cf = sub("classify-fixed", "classify a fixed point",
                 [&](Context& c) { return cmd_classify_fixed(c, z, w, locate); });
  add_point(cf);
  cf->add_flag("--locate", locate, "refine the point by Gauss-Newton first");
  auto* rc = sub("recenter", "move a tangent-to-identity fixed point to the origin",
                 [&](Context& c) { return cmd_recenter(c, z, w, out_path); });
  add_point(rc);
  rc->add_option("--out", out_path, "write the recentered pq spec");
  auto* ob = sub("orbit", "iterate one orbit", [&](Context& c) { return cmd_orbit(c, z, w, orbit, out_path); });
  add_point(ob);
  add_orbit(ob);
  ob->add_option("--out", out_path, "write the orbit as CSV");
  auto* bs = sub("basin", "classify a grid of start points", [&](Context& c) {
    return cmd_basin(c, slice_kind, slice_value, window, res, orbit, threads, out_path);
  });
  bs->add_option("--slice", slice_kind, "\"w=u*z\", \"w=w0\" or \"z=z0\"");
  bs->add_option("--u,--w0,--z0", slice_value, "slice parameter \"re,im\"");
  bs->add_option("--window", window, "\"re,im:half[,half_y]\"")->required();
  bs->add_option("--res", res, "WxH");
  bs->add_option("--threads", threads, "worker threads (default HAKIMKIT_THREADS or all cores)");
  bs->add_option("--out", out_path, "write the raster as PPM");
  add_orbit(bs);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  Context ctx{out, err, map_path};
  for (auto* s : app.get_subcommands()) {
    try {
      return run.at(s->get_name())(ctx);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    } catch (const SpecError& e) {
      err << "error: map spec: " << e.what() << "\n";
      return exit_usage;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_analysis;
    }
  }
  return exit_usage;
}

}  // namespace hakimkit
