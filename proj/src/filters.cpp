#include "vqtune/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace vqtune {

namespace {

struct KindName {
  FilterKind kind;
  const char* name;
};

constexpr std::array<KindName, 10> kKindNames = {{
    {FilterKind::gamma, "gamma"},
    {FilterKind::linear_contrast, "linear_contrast"},
    {FilterKind::poly_contrast, "poly_contrast"},
    {FilterKind::hist_eq, "hist_eq"},
    {FilterKind::clahe, "clahe"},
    {FilterKind::unsharp, "unsharp"},
    {FilterKind::drago, "drago"},
    {FilterKind::reinhard, "reinhard"},
    {FilterKind::retinex, "retinex"},
    {FilterKind::convolution, "convolution"},
}};

void check_param(double value, double lo, double hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(value) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");
  }
}

// Applies a 256-entry lookup table.
Plane map_lut(const Plane& plane, const std::array<std::uint8_t, 256>& lut) {
  return plane.unaryExpr([&lut](std::uint8_t s) { return lut[s]; });
}

std::array<long, 256> histogram(const Plane& plane) {
  std::array<long, 256> hist{};
  const std::uint8_t* p = plane.data();
  for (Eigen::Index i = 0; i < plane.size(); ++i) ++hist[p[i]];
  return hist;
}

std::vector<double> gaussian_taps(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(k + radius)] = w;
    sum += w;
  }
  for (double& w : taps) w /= sum;
  return taps;
}

// Separable Gaussian with edge-replicate padding; no parameter bound check so
// retinex can use surround scales beyond the public sigma range.
RealPlane blur_impl(const RealPlane& plane, double sigma) {
  const std::vector<double> taps = gaussian_taps(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const Eigen::Index h = plane.rows();
  const Eigen::Index w = plane.cols();

  RealPlane horiz(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const Eigen::Index xx = std::clamp<Eigen::Index>(x + k, 0, w - 1);
        acc += taps[static_cast<std::size_t>(k + radius)] * plane(y, xx);
      }
      horiz(y, x) = acc;
    }
  }
  RealPlane out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const Eigen::Index yy = std::clamp<Eigen::Index>(y + k, 0, h - 1);
        acc += taps[static_cast<std::size_t>(k + radius)] * horiz(yy, x);
      }
      out(y, x) = acc;
    }
  }
  return out;
}

// Per-tile tone mapping table for CLAHE: the hist_equalize formula on the
// clipped histogram, kept as raw doubles so interpolation happens before
// rounding. A constant tile keeps the identity mapping.
std::array<double, 256> clahe_tile_mapping(const std::array<long, 256>& hist, long tile_pixels,
                                           double clip_limit) {
  std::array<double, 256> mapping;
  int nonzero_bins = 0;
  for (long c : hist) nonzero_bins += c > 0 ? 1 : 0;
  if (nonzero_bins <= 1) {
    for (int v = 0; v < 256; ++v) mapping[static_cast<std::size_t>(v)] = v;
    return mapping;
  }

  const long clip =
      static_cast<long>(std::ceil(clip_limit * static_cast<double>(tile_pixels) / 256.0));
  std::array<long, 256> clipped = hist;
  long excess = 0;
  for (long& c : clipped) {
    if (c > clip) {
      excess += c - clip;
      c = clip;
    }
  }
  const long share = excess / 256;
  const long residual = excess % 256;
  for (int v = 0; v < 256; ++v) {
    clipped[static_cast<std::size_t>(v)] += share + (v < residual ? 1 : 0);
  }

  long cdf = 0;
  long cdf_min = 0;
  for (int v = 0; v < 256; ++v) {
    cdf += clipped[static_cast<std::size_t>(v)];
    if (cdf_min == 0 && cdf > 0) cdf_min = cdf;
    mapping[static_cast<std::size_t>(v)] = static_cast<double>(cdf);
  }
  if (cdf_min == tile_pixels) {
    for (int v = 0; v < 256; ++v) mapping[static_cast<std::size_t>(v)] = v;
    return mapping;
  }
  const double denom = static_cast<double>(tile_pixels - cdf_min);
  for (double& m : mapping) m = (m - static_cast<double>(cdf_min)) / denom * 255.0;
  return mapping;
}

// Tile spans along one axis: floor-sized tiles, the last one absorbs the
// remainder. More tiles than pixels collapses to one tile per pixel.
struct TileGrid {
  std::vector<Eigen::Index> begin;
  std::vector<Eigen::Index> end;
  std::vector<double> center;
};

TileGrid make_grid(Eigen::Index extent, int tiles) {
  const int n = static_cast<int>(std::min<Eigen::Index>(tiles, extent));
  TileGrid g;
  const Eigen::Index base = extent / n;
  for (int i = 0; i < n; ++i) {
    const Eigen::Index b = static_cast<Eigen::Index>(i) * base;
    const Eigen::Index e = (i + 1 == n) ? extent : b + base;
    g.begin.push_back(b);
    g.end.push_back(e);
    g.center.push_back(static_cast<double>(b + e - 1) / 2.0);
  }
  return g;
}

// Bracketing tile pair and the weight of the upper one; coordinates outside
// the center span use the edge tile alone.
struct Bracket {
  int lo;
  int hi;
  double w;
};

Bracket bracket(const TileGrid& g, Eigen::Index coord) {
  const double x = static_cast<double>(coord);
  const int last = static_cast<int>(g.center.size()) - 1;
  if (x <= g.center[0]) return {0, 0, 0.0};
  if (x >= g.center[static_cast<std::size_t>(last)]) return {last, last, 0.0};
  int j = 0;
  while (g.center[static_cast<std::size_t>(j + 1)] < x) ++j;
  const double c0 = g.center[static_cast<std::size_t>(j)];
  const double c1 = g.center[static_cast<std::size_t>(j + 1)];
  return {j, j + 1, (x - c0) / (c1 - c0)};
}

}  // namespace

std::string to_string(FilterKind kind) {
  for (const KindName& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  throw std::invalid_argument("unknown filter kind");
}

FilterKind filter_kind_from_string(const std::string& name) {
  for (const KindName& kn : kKindNames) {
    if (name == kn.name) return kn.kind;
  }
  throw std::invalid_argument("unknown filter kind '" + name + "'");
}

std::vector<FilterKind> filter_kinds() {
  std::vector<FilterKind> kinds;
  for (const KindName& kn : kKindNames) kinds.push_back(kn.kind);
  return kinds;
}

const ParamEntry* ParamSchema::find(const std::string& name) const {
  for (const ParamEntry& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void ParamSchema::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ParamEntry& e = entries[i];
    if (!(e.min < e.max)) throw std::invalid_argument("schema entry '" + e.name + "': min >= max");
    if (e.default_value < e.min || e.default_value > e.max) {
      throw std::invalid_argument("schema entry '" + e.name + "': default outside bounds");
    }
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[j].name == e.name) {
        throw std::invalid_argument("schema entry '" + e.name + "' duplicated");
      }
    }
  }
}

const ParamSchema& filter_schema(FilterKind kind) {
  static const std::map<FilterKind, ParamSchema> schemas = [] {
    std::map<FilterKind, ParamSchema> m;
    m[FilterKind::gamma] = {{{"gamma", 0.2, 5.0, 1.0}}};
    m[FilterKind::linear_contrast] = {{{"a", 0.25, 4.0, 1.0}, {"b", -64.0, 64.0, 0.0}}};
    m[FilterKind::poly_contrast] = {{{"a3", -2.0, 2.0, 0.0},
                                     {"a2", -2.0, 2.0, 0.0},
                                     {"a1", -2.0, 2.0, 1.0},
                                     {"a0", -2.0, 2.0, 0.0}}};
    m[FilterKind::hist_eq] = {};
    m[FilterKind::clahe] = {
        {{"clip_limit", 1.0, 40.0, 4.0}, {"tiles_x", 1.0, 16.0, 8.0}, {"tiles_y", 1.0, 16.0, 8.0}}};
    m[FilterKind::unsharp] = {{{"sigma", 0.05, 10.0, 1.0}, {"amount", 0.0, 5.0, 1.0}}};
    m[FilterKind::drago] = {{{"bias", 0.01, 0.99, 0.85}}};
    m[FilterKind::reinhard] = {{{"key", 0.01, 2.0, 0.18}}};
    m[FilterKind::retinex] = {
        {{"sigma1", 0.05, 10.0, 1.0}, {"sigma2", 0.05, 10.0, 3.0}, {"sigma3", 0.05, 10.0, 6.0}}};
    ParamSchema conv;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        conv.entries.push_back({"w" + std::to_string(i) + std::to_string(j), -2.0, 2.0,
                                (i == 1 && j == 1) ? 1.0 : 0.0});
      }
    }
    m[FilterKind::convolution] = conv;
    for (auto& [k, schema] : m) schema.validate();
    return m;
  }();
  return schemas.at(kind);
}

double FilterSpec::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) {
    throw std::invalid_argument("filter '" + to_string(kind) + "' has no parameter '" + name +
                                "'");
  }
  return it->second;
}

FilterSpec FilterSpec::create(FilterKind kind, const std::map<std::string, double>& overrides) {
  const ParamSchema& schema = filter_schema(kind);
  FilterSpec spec;
  spec.kind = kind;
  for (const auto& [name, value] : overrides) {
    const ParamEntry* entry = schema.find(name);
    if (entry == nullptr) {
      throw std::invalid_argument("filter '" + to_string(kind) + "' has no parameter '" + name +
                                  "'");
    }
    check_param(value, entry->min, entry->max, name.c_str());
  }
  for (const ParamEntry& entry : schema.entries) {
    const auto it = overrides.find(entry.name);
    spec.params[entry.name] = it == overrides.end() ? entry.default_value : it->second;
  }
  return spec;
}

Kernel::Kernel(int n, RealPlane w) : size(n), weights(std::move(w)) {
  if (size < 1 || size % 2 == 0) throw std::invalid_argument("kernel size must be odd and >= 1");
  if (weights.rows() != size || weights.cols() != size) {
    throw std::invalid_argument("kernel weights must be size x size");
  }
  if (!weights.isFinite().all()) throw std::invalid_argument("kernel weights must be finite");
}

Kernel Kernel::delta(int n) {
  RealPlane w = RealPlane::Zero(n, n);
  w(n / 2, n / 2) = 1.0;
  return Kernel(n, std::move(w));
}

Kernel Kernel::from_flat(int n, const std::vector<double>& flat) {
  if (flat.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("kernel weight count does not match size");
  }
  RealPlane w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = flat[static_cast<std::size_t>(i * n + j)];
  }
  return Kernel(n, std::move(w));
}

std::vector<double> Kernel::to_flat() const {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) flat.push_back(weights(i, j));
  }
  return flat;
}

Plane gamma_correct(const Plane& plane, double gamma) {
  check_param(gamma, 0.2, 5.0, "gamma");
  std::array<std::uint8_t, 256> lut;
  for (int s = 0; s < 256; ++s) {
    lut[static_cast<std::size_t>(s)] = clamp_round_u8(255.0 * std::pow(s / 255.0, gamma));
  }
  return map_lut(plane, lut);
}

Plane linear_contrast(const Plane& plane, double a, double b) {
  check_param(a, 0.25, 4.0, "a");
  check_param(b, -64.0, 64.0, "b");
  std::array<std::uint8_t, 256> lut;
  for (int s = 0; s < 256; ++s) {
    lut[static_cast<std::size_t>(s)] = clamp_round_u8(a * (s - 128.0) + 128.0 + b);
  }
  return map_lut(plane, lut);
}

Plane poly_contrast(const Plane& plane, double a3, double a2, double a1, double a0) {
  check_param(a3, -2.0, 2.0, "a3");
  check_param(a2, -2.0, 2.0, "a2");
  check_param(a1, -2.0, 2.0, "a1");
  check_param(a0, -2.0, 2.0, "a0");
  std::array<std::uint8_t, 256> lut;
  for (int s = 0; s < 256; ++s) {
    const double v = s / 255.0;
    lut[static_cast<std::size_t>(s)] = clamp_round_u8(255.0 * (((a3 * v + a2) * v + a1) * v + a0));
  }
  return map_lut(plane, lut);
}

Plane hist_equalize(const Plane& plane) {
  const std::array<long, 256> hist = histogram(plane);
  const long total = static_cast<long>(plane.size());
  long cdf = 0;
  long cdf_min = 0;
  std::array<long, 256> cdfs{};
  for (int v = 0; v < 256; ++v) {
    cdf += hist[static_cast<std::size_t>(v)];
    if (cdf_min == 0 && cdf > 0) cdf_min = cdf;
    cdfs[static_cast<std::size_t>(v)] = cdf;
  }
  if (cdf_min == total) return plane;  // constant plane
  std::array<std::uint8_t, 256> lut;
  const double denom = static_cast<double>(total - cdf_min);
  for (int v = 0; v < 256; ++v) {
    const double mapped =
        static_cast<double>(cdfs[static_cast<std::size_t>(v)] - cdf_min) / denom * 255.0;
    lut[static_cast<std::size_t>(v)] = clamp_round_u8(mapped);
  }
  return map_lut(plane, lut);
}

Plane clahe(const Plane& plane, double clip_limit, int tiles_x, int tiles_y) {
  check_param(clip_limit, 1.0, 40.0, "clip_limit");
  check_param(tiles_x, 1, 16, "tiles_x");
  check_param(tiles_y, 1, 16, "tiles_y");

  const TileGrid gx = make_grid(plane.cols(), tiles_x);
  const TileGrid gy = make_grid(plane.rows(), tiles_y);
  const std::size_t nx = gx.begin.size();
  const std::size_t ny = gy.begin.size();

  std::vector<std::array<double, 256>> mappings(nx * ny);
  for (std::size_t ty = 0; ty < ny; ++ty) {
    for (std::size_t tx = 0; tx < nx; ++tx) {
      std::array<long, 256> hist{};
      for (Eigen::Index y = gy.begin[ty]; y < gy.end[ty]; ++y) {
        for (Eigen::Index x = gx.begin[tx]; x < gx.end[tx]; ++x) ++hist[plane(y, x)];
      }
      const long tile_pixels =
          static_cast<long>((gy.end[ty] - gy.begin[ty]) * (gx.end[tx] - gx.begin[tx]));
      mappings[ty * nx + tx] = clahe_tile_mapping(hist, tile_pixels, clip_limit);
    }
  }

  Plane out(plane.rows(), plane.cols());
  for (Eigen::Index y = 0; y < plane.rows(); ++y) {
    const Bracket by = bracket(gy, y);
    for (Eigen::Index x = 0; x < plane.cols(); ++x) {
      const Bracket bx = bracket(gx, x);
      const std::uint8_t s = plane(y, x);
      const double top = (1.0 - bx.w) * mappings[static_cast<std::size_t>(by.lo) * nx + bx.lo][s] +
                         bx.w * mappings[static_cast<std::size_t>(by.lo) * nx + bx.hi][s];
      const double bottom =
          (1.0 - bx.w) * mappings[static_cast<std::size_t>(by.hi) * nx + bx.lo][s] +
          bx.w * mappings[static_cast<std::size_t>(by.hi) * nx + bx.hi][s];
      out(y, x) = clamp_round_u8((1.0 - by.w) * top + by.w * bottom);
    }
  }
  return out;
}

RealPlane gaussian_blur(const RealPlane& plane, double sigma) {
  if (!(sigma > 0.0 && sigma <= 10.0)) {
    throw std::invalid_argument("sigma = " + std::to_string(sigma) + " outside (0, 10]");
  }
  return blur_impl(plane, sigma);
}

RealPlane gaussian_blur(const Plane& plane, double sigma) {
  return gaussian_blur(to_real(plane), sigma);
}

Plane unsharp(const Plane& plane, double sigma, double amount) {
  check_param(amount, 0.0, 5.0, "amount");
  const RealPlane s = to_real(plane);
  const RealPlane blurred = gaussian_blur(s, sigma);
  return to_u8(s + amount * (s - blurred));
}

Plane drago_tonemap(const Plane& plane, double bias) {
  check_param(bias, 0.01, 0.99, "bias");
  const double vmax = plane.maxCoeff() / 255.0;
  if (vmax == 0.0) return plane;
  const double exponent = std::log(bias) / std::log(0.5);
  const double world_max = 100.0 * vmax;
  const double scale = 1.0 / std::log10(world_max + 1.0);
  std::array<std::uint8_t, 256> lut;
  for (int s = 0; s < 256; ++s) {
    const double world = 100.0 * (s / 255.0);
    const double display = scale * std::log(world + 1.0) /
                           std::log(2.0 + 8.0 * std::pow(world / world_max, exponent));
    lut[static_cast<std::size_t>(s)] = clamp_round_u8(255.0 * display);
  }
  return map_lut(plane, lut);
}

Plane reinhard_tonemap(const Plane& plane, double key) {
  check_param(key, 0.01, 2.0, "key");
  constexpr double kLogStabilizer = 1e-4;
  const std::array<long, 256> hist = histogram(plane);
  double log_sum = 0.0;
  for (int s = 0; s < 256; ++s) {
    if (hist[static_cast<std::size_t>(s)] == 0) continue;
    log_sum += static_cast<double>(hist[static_cast<std::size_t>(s)]) *
               std::log(kLogStabilizer + s / 255.0);
  }
  const double log_mean = std::exp(log_sum / static_cast<double>(plane.size()));
  std::array<std::uint8_t, 256> lut;
  for (int s = 0; s < 256; ++s) {
    const double scaled = key * (s / 255.0) / log_mean;
    lut[static_cast<std::size_t>(s)] = clamp_round_u8(255.0 * scaled / (1.0 + scaled));
  }
  return map_lut(plane, lut);
}

Plane retinex(const Plane& plane, const std::vector<double>& sigmas) {
  if (sigmas.empty() || sigmas.size() > 3) {
    throw std::invalid_argument("retinex takes 1 to 3 scales");
  }
  for (double s : sigmas) {
    if (!(s > 0.0 && s <= 10.0)) {
      throw std::invalid_argument("retinex sigma = " + std::to_string(s) + " outside (0, 10]");
    }
  }
  const RealPlane raw = to_real(plane);
  const RealPlane log_raw = (1.0 + raw).log();
  RealPlane response = RealPlane::Zero(plane.rows(), plane.cols());
  for (double s : sigmas) {
    response += log_raw - (1.0 + blur_impl(raw, 16.0 * s)).log();
  }
  response /= static_cast<double>(sigmas.size());
  const double lo = response.minCoeff();
  const double hi = response.maxCoeff();
  if (hi == lo) return plane;
  return to_u8((response - lo) / (hi - lo) * 255.0);
}

Plane convolve(const Plane& plane, const Kernel& kernel) {
  const int radius = kernel.size / 2;
  const Eigen::Index h = plane.rows();
  const Eigen::Index w = plane.cols();
  Plane out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kernel.size; ++i) {
        const Eigen::Index yy = std::clamp<Eigen::Index>(y + i - radius, 0, h - 1);
        for (int j = 0; j < kernel.size; ++j) {
          const Eigen::Index xx = std::clamp<Eigen::Index>(x + j - radius, 0, w - 1);
          acc += kernel.weights(i, j) * plane(yy, xx);
        }
      }
      out(y, x) = clamp_round_u8(acc);
    }
  }
  return out;
}

Plane apply_to_plane(const Plane& plane, const FilterSpec& spec) {
  switch (spec.kind) {
    case FilterKind::gamma:
      return gamma_correct(plane, spec.param("gamma"));
    case FilterKind::linear_contrast:
      return linear_contrast(plane, spec.param("a"), spec.param("b"));
    case FilterKind::poly_contrast:
      return poly_contrast(plane, spec.param("a3"), spec.param("a2"), spec.param("a1"),
                           spec.param("a0"));
    case FilterKind::hist_eq:
      return hist_equalize(plane);
    case FilterKind::clahe:
      return clahe(plane, spec.param("clip_limit"),
                   static_cast<int>(std::lround(spec.param("tiles_x"))),
                   static_cast<int>(std::lround(spec.param("tiles_y"))));
    case FilterKind::unsharp:
      return unsharp(plane, spec.param("sigma"), spec.param("amount"));
    case FilterKind::drago:
      return drago_tonemap(plane, spec.param("bias"));
    case FilterKind::reinhard:
      return reinhard_tonemap(plane, spec.param("key"));
    case FilterKind::retinex:
      return retinex(plane, {spec.param("sigma1"), spec.param("sigma2"), spec.param("sigma3")});
    case FilterKind::convolution: {
      std::vector<double> flat;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          flat.push_back(spec.param("w" + std::to_string(i) + std::to_string(j)));
        }
      }
      return convolve(plane, Kernel::from_flat(3, flat));
    }
  }
  throw std::invalid_argument("unknown filter kind");
}

VideoFrame apply_filter(const VideoFrame& frame, const FilterSpec& spec) {
  VideoFrame out = frame;
  out.y = apply_to_plane(frame.y, spec);
  return out;
}

VideoSequence apply_chain(const VideoSequence& seq, const FilterChain& chain) {
  VideoSequence out = seq;
  for (VideoFrame& frame : out.frames) {
    for (const FilterSpec& spec : chain.stages) frame = apply_filter(frame, spec);
  }
  return out;
}

void to_json(nlohmann::json& j, const FilterSpec& spec) {
  j = nlohmann::json{{"kind", to_string(spec.kind)}, {"params", spec.params}};
}

void from_json(const nlohmann::json& j, FilterSpec& spec) {
  const FilterKind kind = filter_kind_from_string(j.at("kind").get<std::string>());
  std::map<std::string, double> overrides;
  if (j.contains("params")) {
    overrides = j.at("params").get<std::map<std::string, double>>();
  }
  spec = FilterSpec::create(kind, overrides);
}

void to_json(nlohmann::json& j, const FilterChain& chain) {
  j = nlohmann::json{{"stages", chain.stages}};
}

void from_json(const nlohmann::json& j, FilterChain& chain) {
  chain.stages = j.at("stages").get<std::vector<FilterSpec>>();
}

}  // namespace vqtune
