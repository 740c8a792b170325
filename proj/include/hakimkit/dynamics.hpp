#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hakimkit/hakim.hpp"
#include "hakimkit/maps.hpp"

namespace hakimkit {

// All dynamics here is that of the truncated polynomial model, not of an automorphism.

/// F flattened for repeated point evaluation.
class CompiledMap {
 public:
  explicit CompiledMap(const FloatTangentMap& f);
  template <CoefficientField S>
  explicit CompiledMap(const TangentMap<S>& f) : CompiledMap(to_float(f)) {}

  Point operator()(const Point& x) const;
  int trunc() const { return trunc_; }
  /// Order k of F; nullopt for the identity.
  std::optional<int> order() const { return order_; }

 private:
  // rows[a][b] = coefficient of z^a w^b, evaluated by nested Horner
  using Rows = std::vector<std::vector<Complex>>;
  static Rows rows_of(const FloatSeries& s);
  static Complex horner(const Rows& rows, Complex z, Complex w);

  int trunc_ = 0;
  std::optional<int> order_;
  Rows p_;
  Rows q_;
};

enum class OrbitOutcome { converged_to_origin, converged_elsewhere, escaped, undecided };

std::string to_string(OrbitOutcome outcome);

struct OrbitOptions {
  int max_iter = 100000;
  double r_conv = 1e-3;
  double r_escape = 1e6;
  /// Steps the orbit must spend inside r_conv, with ||x_n|| < ||x_{n-window}||.
  int confirm_window = 100;
  /// Bound on n^{1/(k-1)} ||x_n||; convergence to a parabolic point of order k is ~ n^{-1/(k-1)}.
  double rate_bound = 1e3;
  /// A step below stall * (1 + ||x||) throughout the window, away from the origin and the start, counts as converged-elsewhere.
  double stall = 1e-12;
  bool record_points = true;
};

struct OrbitRecord {
  /// x_0 = start, x_1, ..., when recorded.
  std::vector<Point> points;
  OrbitOutcome outcome = OrbitOutcome::undecided;
  /// Unit representative of the limiting direction; only for converged-to-origin.
  std::optional<Point> tangent_estimate;
  int iterations_used = 0;
  Point last{Point::Zero()};
};

OrbitRecord iterate_orbit(const CompiledMap& f, const Point& start, const OrbitOptions& options = {});

template <CoefficientField S>
OrbitRecord iterate_orbit(const TangentMap<S>& f, const Point& start, const OrbitOptions& options = {}) {
  return iterate_orbit(CompiledMap(f), start, options);
}

/// sqrt(1 - |<u, v>|^2 / (|u|^2 |v|^2)), the chordal distance between the lines through u and v.
double fubini_study_distance(const Point& u, const Point& v);

enum class SliceKind { direction, fixed_w, fixed_z };

/// w = u z (z varies), w = w0 (z varies), or z = z0 (w varies).
struct Slice {
  SliceKind kind = SliceKind::direction;
  Complex value{1.0, 0.0};

  Point start(Complex c) const;
  std::string label() const;
};

struct Window {
  Complex center{};
  double half_x = 1.0;
  double half_y = 1.0;
};

struct Pixel {
  OrbitOutcome outcome = OrbitOutcome::undecided;
  int iterations = 0;
  std::optional<Point> tangent;
};

struct BasinRaster {
  int width = 0;
  int height = 0;
  Window window;
  Slice slice;
  int max_iter = 0;
  /// Row-major, row 0 at the top (largest imaginary part).
  std::vector<Pixel> pixels;

  const Pixel& at(int col, int row) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::size_t count(OrbitOutcome outcome) const;
};

/// Complex coordinate of a pixel center.
Complex pixel_center(const Window& window, int width, int height, int col, int row);

/// HAKIMKIT_THREADS when set to a positive integer, otherwise the hardware concurrency.
int default_thread_count();

struct RenderOptions {
  OrbitOptions orbit{};
  /// 0 means default_thread_count().
  int threads = 0;
};

/// Classifies every pixel center of `window` on `slice`. Rows are computed concurrently; the
/// result does not depend on the thread count.
BasinRaster render_basin(const FloatTangentMap& f, const Slice& slice, const Window& window, int width, int height,
                         RenderOptions options = {});

struct DirectionCount {
  CharacteristicDirection direction;
  std::size_t count = 0;
};

struct TangentHistogram {
  std::vector<DirectionCount> bins;
  std::size_t unmatched = 0;
  std::size_t total = 0;

  bool empty() const { return total == 0; }
};

/// Assigns the tangent estimate of every converged-to-origin record to the nearest
/// characteristic direction, or to `unmatched` beyond `threshold`.
TangentHistogram tangent_statistics(const std::vector<OrbitRecord>& records,
                                    const std::vector<CharacteristicDirection>& dirs, double threshold = 0.05);
TangentHistogram tangent_statistics(const BasinRaster& raster, const std::vector<CharacteristicDirection>& dirs,
                                    double threshold = 0.05);

/// RGB of a pixel: converged-to-origin white to blue by iteration count, escaped black,
/// undecided gray, converged-elsewhere red.
std::array<unsigned char, 3> pixel_color(const Pixel& pixel, int max_iter);

/// Binary PPM (P6).
void write_ppm(std::ostream& out, const BasinRaster& raster);

/// Columns iter, re(z), im(z), re(w), im(w); CRLF line ends. Several records are written one after
/// another under one header, each restarting at iter 0.
void write_orbit_csv(std::ostream& out, const std::vector<OrbitRecord>& records);

}  // namespace hakimkit
