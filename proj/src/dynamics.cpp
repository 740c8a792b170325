#include "hakimkit/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "hakimkit/error.hpp"
#include "hakimkit/format.hpp"

namespace hakimkit {

CompiledMap::Rows CompiledMap::rows_of(const FloatSeries& s) {
  Rows rows;
  for (const auto& [e, c] : s.terms()) {
    if (static_cast<int>(rows.size()) <= e.alpha) rows.resize(e.alpha + 1);
    auto& row = rows[e.alpha];
    if (static_cast<int>(row.size()) <= e.beta) row.resize(e.beta + 1);
    row[e.beta] = c;
  }
  return rows;
}

Complex CompiledMap::horner(const Rows& rows, Complex z, Complex w) {
  Complex acc = 0;
  for (auto r = rows.rbegin(); r != rows.rend(); ++r) {
    Complex inner = 0;
    for (auto c = r->rbegin(); c != r->rend(); ++c) inner = inner * w + *c;
    acc = acc * z + inner;
  }
  return acc;
}

CompiledMap::CompiledMap(const FloatTangentMap& f) : trunc_(f.trunc()), p_(rows_of(f.p())), q_(rows_of(f.q())) {
  if (!f.is_identity()) order_ = hakimkit::order(f);
}

Point CompiledMap::operator()(const Point& x) const {
  return {x(0) + horner(p_, x(0), x(1)), x(1) + horner(q_, x(0), x(1))};
}

std::string to_string(OrbitOutcome outcome) {
  switch (outcome) {
    case OrbitOutcome::converged_to_origin:
      return "converged-to-origin";
    case OrbitOutcome::converged_elsewhere:
      return "converged-elsewhere";
    case OrbitOutcome::escaped:
      return "escaped";
    case OrbitOutcome::undecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

bool finite(const Point& x) {
  return std::isfinite(x(0).real()) && std::isfinite(x(0).imag()) && std::isfinite(x(1).real()) &&
         std::isfinite(x(1).imag());
}

// Phase-aligned mean of the unit representatives of the last `count` points.
Point projective_mean(const std::vector<Point>& ring, int newest, int count) {
  const int size = static_cast<int>(ring.size());
  const Point ref = ring[newest].normalized();
  Point sum = Point::Zero();
  for (int i = 0; i < count; ++i) {
    Point v = ring[((newest - i) % size + size) % size].normalized();
    const Complex ip = ref.dot(v);
    if (std::abs(ip) > 0) v *= std::conj(ip) / std::abs(ip);
    sum += v;
  }
  return sum.normalized();
}

void validate(const OrbitOptions& options) {
  if (!(options.r_conv > 0 && options.r_conv < options.r_escape))
    throw DynamicsError("need 0 < r_conv < r_escape");
  if (options.max_iter <= 0) throw DynamicsError("max_iter must be positive");
}

}  // namespace

OrbitRecord iterate_orbit(const CompiledMap& f, const Point& start, const OrbitOptions& options) {
  validate(options);
  const int window = std::max(options.confirm_window, 10);
  const double exponent = f.order() ? 1.0 / (*f.order() - 1) : 0.0;

  OrbitRecord rec;
  rec.last = start;
  if (options.record_points) rec.points.push_back(start);
  if (!finite(start) || start.norm() > options.r_escape) {
    rec.outcome = OrbitOutcome::escaped;
    return rec;
  }

  std::vector<Point> ring(window + 1);
  ring[0] = start;
  Point x = start;
  int inside = 0;
  int stalled = 0;
  int still = 0;
  for (int n = 1; n <= options.max_iter; ++n) {
    const Point next = f(x);
    rec.iterations_used = n;
    if (!finite(next) || next.norm() > options.r_escape) {
      rec.outcome = OrbitOutcome::escaped;
      if (finite(next)) {
        rec.last = next;
        if (options.record_points) rec.points.push_back(next);
      }
      return rec;
    }
    const double step = (next - x).norm();
    x = next;
    rec.last = x;
    ring[n % (window + 1)] = x;
    if (options.record_points) rec.points.push_back(x);

    const double norm = x.norm();
    inside = norm < options.r_conv ? inside + 1 : 0;
    stalled = step <= options.stall * (1.0 + norm) ? stalled + 1 : 0;
    still = step == 0.0 ? still + 1 : 0;

    if (f.order() && inside >= window) {
      const double earlier = ring[(n - window) % (window + 1)].norm();
      if (norm < earlier && std::pow(static_cast<double>(n), exponent) * norm <= options.rate_bound) {
        rec.outcome = OrbitOutcome::converged_to_origin;
        rec.tangent_estimate = projective_mean(ring, n % (window + 1), 10);
        return rec;
      }
    }
    if (stalled >= window && norm >= options.r_conv) {
      // a start point that never moved is undecided, not a limit of the dynamics
      if ((x - start).norm() > 1e-9 * (1.0 + start.norm())) {
        rec.outcome = OrbitOutcome::converged_elsewhere;
        return rec;
      }
      if (still >= window) return rec;
    }
  }
  return rec;
}

double fubini_study_distance(const Point& u, const Point& v) {
  const double nu = u.squaredNorm(), nv = v.squaredNorm();
  if (nu == 0 || nv == 0) throw DynamicsError("zero vector has no projective class");
  const double c = std::norm(u.dot(v)) / (nu * nv);
  return std::sqrt(std::max(0.0, 1.0 - c));
}

Point Slice::start(Complex c) const {
  switch (kind) {
    case SliceKind::direction:
      return {c, value * c};
    case SliceKind::fixed_w:
      return {c, value};
    case SliceKind::fixed_z:
      return {value, c};
  }
  return {c, value * c};
}

std::string Slice::label() const {
  switch (kind) {
    case SliceKind::direction:
      return "w=u*z, u=" + format_complex(value);
    case SliceKind::fixed_w:
      return "w=" + format_complex(value) + ", z varies";
    case SliceKind::fixed_z:
      return "z=" + format_complex(value) + ", w varies";
  }
  return "";
}

std::size_t BasinRaster::count(OrbitOutcome outcome) const {
  return static_cast<std::size_t>(
      std::count_if(pixels.begin(), pixels.end(), [&](const Pixel& p) { return p.outcome == outcome; }));
}

Complex pixel_center(const Window& window, int width, int height, int col, int row) {
  const double x = window.center.real() - window.half_x + (col + 0.5) * (2 * window.half_x / width);
  const double y = window.center.imag() + window.half_y - (row + 0.5) * (2 * window.half_y / height);
  return {x, y};
}

int default_thread_count() {
  if (const char* env = std::getenv("HAKIMKIT_THREADS")) {
    int n = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec == std::errc() && ptr == end && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BasinRaster render_basin(const FloatTangentMap& f, const Slice& slice, const Window& window, int width, int height,
                         RenderOptions options) {
  if (width <= 0 || height <= 0) throw DynamicsError("resolution must be positive");
  if (!(window.half_x > 0 && window.half_y > 0) || !std::isfinite(window.half_x) || !std::isfinite(window.half_y))
    throw DynamicsError("window has zero area");
  options.orbit.record_points = false;
  const CompiledMap compiled(f);
  validate(options.orbit);

  BasinRaster raster{width, height, window, slice, options.orbit.max_iter, {}};
  raster.pixels.resize(static_cast<std::size_t>(width) * height);
  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (int row; (row = next_row.fetch_add(1)) < height;) {
      for (int col = 0; col < width; ++col) {
        const auto rec = iterate_orbit(compiled, slice.start(pixel_center(window, width, height, col, row)), options.orbit);
        raster.pixels[static_cast<std::size_t>(row) * width + col] = {rec.outcome, rec.iterations_used,
                                                                      rec.tangent_estimate};
      }
    }
  };
  const int threads = std::clamp(options.threads > 0 ? options.threads : default_thread_count(), 1, height);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return raster;
}

namespace {

void tally(TangentHistogram& hist, const Point& tangent, const std::vector<CharacteristicDirection>& dirs,
           double threshold) {
  ++hist.total;
  std::size_t best = dirs.size();
  double best_distance = threshold;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double d = fubini_study_distance(tangent, dirs[i].vector());
    if (d <= best_distance) {
      best = i;
      best_distance = d;
    }
  }
  if (best == dirs.size())
    ++hist.unmatched;
  else
    ++hist.bins[best].count;
}

TangentHistogram empty_histogram(const std::vector<CharacteristicDirection>& dirs) {
  TangentHistogram hist;
  for (const auto& d : dirs) hist.bins.push_back({d, 0});
  return hist;
}

}  // namespace

TangentHistogram tangent_statistics(const std::vector<OrbitRecord>& records,
                                    const std::vector<CharacteristicDirection>& dirs, double threshold) {
  auto hist = empty_histogram(dirs);
  for (const auto& r : records)
    if (r.outcome == OrbitOutcome::converged_to_origin && r.tangent_estimate)
      tally(hist, *r.tangent_estimate, dirs, threshold);
  return hist;
}

TangentHistogram tangent_statistics(const BasinRaster& raster, const std::vector<CharacteristicDirection>& dirs,
                                    double threshold) {
  auto hist = empty_histogram(dirs);
  for (const auto& p : raster.pixels)
    if (p.outcome == OrbitOutcome::converged_to_origin && p.tangent) tally(hist, *p.tangent, dirs, threshold);
  return hist;
}

std::array<unsigned char, 3> pixel_color(const Pixel& pixel, int max_iter) {
  switch (pixel.outcome) {
    case OrbitOutcome::converged_to_origin: {
      const double t = max_iter > 0 ? std::clamp(static_cast<double>(pixel.iterations) / max_iter, 0.0, 1.0) : 0.0;
      const auto fade = static_cast<unsigned char>(std::lround(255 * (1 - t)));
      return {fade, fade, 255};
    }
    case OrbitOutcome::escaped:
      return {0, 0, 0};
    case OrbitOutcome::undecided:
      return {128, 128, 128};
    case OrbitOutcome::converged_elsewhere:
      return {255, 0, 0};
  }
  return {128, 128, 128};
}

void write_ppm(std::ostream& out, const BasinRaster& raster) {
  out << "P6\n" << raster.width << ' ' << raster.height << "\n255\n";
  for (const auto& p : raster.pixels) {
    const auto rgb = pixel_color(p, raster.max_iter);
    out.write(reinterpret_cast<const char*>(rgb.data()), 3);
  }
}

void write_orbit_csv(std::ostream& out, const std::vector<OrbitRecord>& records) {
  out << "iter,re(z),im(z),re(w),im(w)\r\n";
  for (const auto& r : records)
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const Point& x = r.points[i];
      out << fmt::format("{},{},{},{},{}\r\n", i, x(0).real(), x(0).imag(), x(1).real(), x(1).imag());
    }
}

}  // namespace hakimkit
