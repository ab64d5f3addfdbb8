#pragma once

#include "vqtune/frame.hpp"
#include "vqtune/plane.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace vqtune {

enum class FilterKind {
  gamma,
  linear_contrast,
  poly_contrast,
  hist_eq,
  clahe,
  unsharp,
  drago,
  reinhard,
  retinex,
  convolution,
};

std::string to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& name);
std::vector<FilterKind> filter_kinds();

// Bounded, named parameters of one filter kind. Entry order is the
// optimizer's gene order.
struct ParamEntry {
  std::string name;
  double min;
  double max;
  double default_value;
};

struct ParamSchema {
  std::vector<ParamEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  const ParamEntry* find(const std::string& name) const;
  void validate() const;  // min < max, default in range, unique names
};

const ParamSchema& filter_schema(FilterKind kind);

// A filter kind plus a complete, in-bounds parameter map.
struct FilterSpec {
  FilterKind kind = FilterKind::gamma;
  std::map<std::string, double> params;

  double param(const std::string& name) const;

  // Fills missing parameters with schema defaults, rejects unknown names and
  // out-of-bounds values.
  static FilterSpec create(FilterKind kind, const std::map<std::string, double>& overrides = {});
  static FilterSpec with_defaults(FilterKind kind) { return create(kind); }
};

// Ordered filter stages; the empty chain is the identity.
struct FilterChain {
  std::vector<FilterSpec> stages;
};

// Square convolution kernel, odd size, finite weights.
struct Kernel {
  int size = 3;
  RealPlane weights;  // size x size

  Kernel() : weights(RealPlane::Zero(3, 3)) { weights(1, 1) = 1.0; }
  Kernel(int n, RealPlane w);

  static Kernel delta(int n);
  static Kernel from_flat(int n, const std::vector<double>& flat);  // row-major
  std::vector<double> to_flat() const;
};

// --- plane operations --------------------------------------------------
//
// All operations preserve dimensions and produce samples in [0,255]; internal
// arithmetic is double over normalized v = sample/255 unless noted, rounded
// half-away-from-zero at the final step. Out-of-bounds parameters throw
// std::invalid_argument.

// out = round(255 * (s/255)^gamma), gamma in [0.2, 5].
Plane gamma_correct(const Plane& plane, double gamma);

// out = clamp(round(a*(s - 128) + 128 + b)) on raw samples; a in [0.25, 4],
// b in [-64, 64].
Plane linear_contrast(const Plane& plane, double a, double b);

// out = clamp(round(255 * (a3 v^3 + a2 v^2 + a1 v + a0))), coefficients in [-2, 2].
Plane poly_contrast(const Plane& plane, double a3, double a2, double a1, double a0);

// out(s) = round((cdf(s) - cdf_min) / (N - cdf_min) * 255); constant planes
// are returned unchanged.
Plane hist_equalize(const Plane& plane);

// Tiled histogram equalization with per-tile clipping at
// ceil(clip_limit * N_tile / 256), uniform redistribution of the clipped
// excess (residual round-robin from bin 0) and bilinear interpolation between
// the mappings of neighboring tile centers. Constant tiles map identically.
// clip_limit in [1, 40], tiles in [1, 16]; the last tiles absorb remainders.
Plane clahe(const Plane& plane, double clip_limit, int tiles_x, int tiles_y);

// Separable Gaussian on raw samples, kernel radius ceil(3*sigma), weights
// normalized to sum 1, edge-replicate padding. Real-valued output; callers
// round. sigma in (0, 10].
RealPlane gaussian_blur(const Plane& plane, double sigma);
RealPlane gaussian_blur(const RealPlane& plane, double sigma);

// out = clamp(round(s + amount * (s - blur_sigma(s)))); sigma in [0.05, 10],
// amount in [0, 5].
Plane unsharp(const Plane& plane, double sigma, double amount);

// Adaptive logarithmic tone mapping on normalized luma treated as nominal
// [0,100] luminance; bias in [0.01, 0.99]. An all-zero plane is returned
// unchanged.
Plane drago_tonemap(const Plane& plane, double bias);

// Global photographic operator: geometric-mean key scaling followed by
// L/(1+L); key in [0.01, 2].
Plane reinhard_tonemap(const Plane& plane, double key);

// Multi-scale log-ratio to Gaussian surrounds (each sigma is in units of 16
// pixels), min-max normalized to [0,255]. 1 to 3 scales, each in [0.05, 10].
// A flat response returns the plane unchanged.
Plane retinex(const Plane& plane, const std::vector<double>& sigmas);

// 2-D correlation with edge-replicate padding: out = clamp(round(sum w*s)).
Plane convolve(const Plane& plane, const Kernel& kernel);

// Applies the spec's plane operation to the luma plane; chroma passes
// through unchanged.
VideoFrame apply_filter(const VideoFrame& frame, const FilterSpec& spec);
Plane apply_to_plane(const Plane& plane, const FilterSpec& spec);

// Per-frame application of all stages in order; the empty chain is identity.
VideoSequence apply_chain(const VideoSequence& seq, const FilterChain& chain);

// --- JSON forms ---------------------------------------------------------
// FilterSpec:  {"kind": "...", "params": {...}}
// FilterChain: {"stages": [ ... ]}
void to_json(nlohmann::json& j, const FilterSpec& spec);
void from_json(const nlohmann::json& j, FilterSpec& spec);
void to_json(nlohmann::json& j, const FilterChain& chain);
void from_json(const nlohmann::json& j, FilterChain& chain);

}  // namespace vqtune
