#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "deltoid/algebra.hpp"
#include "deltoid/monodromy.hpp"

#include <json.hpp>

namespace deltoid {

class IoError : public Error {
 public:
  using Error::Error;
};

// Slices ------------------------------------------------------------------------

/// X: the line y = conj(alpha), coordinate x. Y: the line x = alpha, coordinate y.
/// Both pass through the Euclidean anchor (alpha, conj(alpha)).
enum class SliceAxis { X, Y };

struct SliceSpec {
  SliceAxis axis = SliceAxis::X;
  Complex alpha{};
  Complex center{};
  double half_width = 1.0;
  int resolution = 256;

  /// Throws DomainError unless resolution >= 16 and half_width > 0.
  void validate() const;
  double pixel_size() const { return 2.0 * half_width / resolution; }
  /// Slice coordinate at the center of pixel (col, row); row 0 is the top.
  Complex pixel_coord(int col, int row) const;
  AffinePoint point(Complex c) const;
  /// The E^2 point whose pedal curve is this slice: alpha for X, conj(alpha)
  /// for Y (the swap (x, y) -> (y, x) carries one slice onto the other).
  Complex pedal_anchor() const { return axis == SliceAxis::X ? alpha : std::conj(alpha); }
  /// Slice coordinate of a pedal point taken with respect to pedal_anchor().
  Complex pedal_to_slice(Complex pedal) const;
};

struct RasterImage {
  int width = 0;
  int height = 0;
  /// Row-major, values in [0, 1].
  std::vector<double> gray;
  /// Row-major; empty when the render marks nothing.
  std::vector<std::uint8_t> marked;

  double& at(int col, int row) { return gray[static_cast<std::size_t>(row) * width + col]; }
  double at(int col, int row) const { return gray[static_cast<std::size_t>(row) * width + col]; }
  bool is_marked(int col, int row) const {
    return !marked.empty() && marked[static_cast<std::size_t>(row) * width + col] != 0;
  }
  std::size_t marked_count() const;
};

/// Distance from the point at slice coordinate c to J along the slice, to
/// first order: min over tangent parameters of ||t| - 1| / |dt/dc|.
double julia_slice_distance(const SliceSpec& spec, Complex c);

/// Half the pixel diagonal.
double default_band(const SliceSpec& spec);

/// Pixels whose distance to J along the slice is within `band` are marked;
/// the rest are shaded by the distance of the nearest tangent parameter to
/// the unit circle.
RasterImage render_julia_slice(const SliceSpec& spec, double band);
/// green_closed / max over the window.
RasterImage render_green_slice(const SliceSpec& spec);

/// pedal_point(alpha, e^{i theta}) for n uniform angles starting at 0.
std::vector<Complex> sample_pedal_cloud(Complex alpha, int n);
/// The pedal cloud of pedal_anchor() pushed into the slice coordinate.
std::vector<Complex> slice_pedal_cloud(const SliceSpec& spec, int n);

// Emission ------------------------------------------------------------------------

/// Binary P6, maxval 255. Marked pixels are drawn red.
void write_ppm(const RasterImage& image, const std::filesystem::path& path);
std::string ppm_bytes(const RasterImage& image);

/// Closed polyline through `points` (complex numbers as plane points).
std::string svg_polyline(const std::vector<Complex>& points, bool closed);
/// Marked pixels as squares in slice coordinates, plus an optional overlay.
std::string svg_raster(const SliceSpec& spec, const RasterImage& image, const std::vector<Complex>& overlay);

/// Header `re_x,im_x,re_y,im_y`, 17 significant digits.
std::string csv_points(const std::vector<AffinePoint>& points);

void write_text(const std::string& text, const std::filesystem::path& path);
void write_json(const nlohmann::ordered_json& value, const std::filesystem::path& path);

// Reports -------------------------------------------------------------------------

nlohmann::ordered_json complex_json(Complex z);
/// {"point": [re_x, im_x, re_y, im_y], "green": g, "julia_distance": d, "quartic_residual": q}
nlohmann::ordered_json verdict_json(const AffinePoint& p);
nlohmann::ordered_json permutation_json(const Permutation& p);
nlohmann::ordered_json relation_report_json(const RelationReport& r);

enum class Suite { Curve, Dynamics, Fatou, Monodromy, All };
Suite parse_suite(std::string_view name);

/// Seeded randomized checks of the library identities. The report contains
/// no timings, so equal seeds give byte-identical JSON.
nlohmann::ordered_json run_verify(Suite suite, std::uint64_t seed);

}  // namespace deltoid
