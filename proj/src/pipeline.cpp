#include "fpbz/pipeline.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "fpbz/bezier.hpp"
#include "fpbz/fileio.hpp"
#include "fpbz/pgm.hpp"

namespace fpbz {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

int parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer '" + value + "' for " + key);
  }
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number '" + value + "' for " + key);
  }
}

}  // namespace

void validate_config(const PipelineConfig& cfg) {
  if (cfg.fft_block < 1) {
    throw std::invalid_argument("config: fft_block must be >= 1");
  }
  if (!(cfg.fft_k >= 0.0)) {
    throw std::invalid_argument("config: fft_k must be >= 0");
  }
  if (cfg.threshold != kAutoThreshold && (cfg.threshold < 0 || cfg.threshold > 255)) {
    throw std::invalid_argument("config: threshold must be auto or 0..255");
  }
  if (cfg.orientation_block < 3) {
    throw std::invalid_argument("config: orientation_block must be >= 3");
  }
  if (cfg.spur_iters < 0) {
    throw std::invalid_argument("config: spur_iters must be >= 0");
  }
  if (cfg.min_ridge_px < 1) {
    throw std::invalid_argument("config: min_ridge_px must be >= 1");
  }
  if (!(cfg.tol >= 0.0)) {
    throw std::invalid_argument("config: tol must be >= 0");
  }
}

void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key=value, got '" + stripped + "'");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key == "fft_block") {
      cfg.fft_block = parse_int(value, key);
    } else if (key == "fft_k") {
      cfg.fft_k = parse_double(value, key);
    } else if (key == "threshold") {
      cfg.threshold = value == "auto" ? kAutoThreshold : parse_int(value, key);
    } else if (key == "orientation_block") {
      cfg.orientation_block = parse_int(value, key);
    } else if (key == "spur_iters") {
      cfg.spur_iters = parse_int(value, key);
    } else if (key == "min_ridge_px") {
      cfg.min_ridge_px = parse_int(value, key);
    } else if (key == "tol") {
      cfg.tol = parse_double(value, key);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
}

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
  std::vector<std::uint8_t> bytes = read_file(path);
  apply_config_text(cfg, std::string(bytes.begin(), bytes.end()));
}

CompressionResult compress_image(const GrayImage& img, const PipelineConfig& cfg,
                                 bool skip_preprocess, PipelineStages* stages) {
  validate_config(cfg);
  BinaryImage cleaned;
  if (skip_preprocess) {
    // Input is already a skeleton rendering: dark pixels are foreground.
    cleaned = BinaryImage(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      cleaned.bits[i] = img.pixels[i] < 128 ? 1 : 0;
    }
  } else {
    GrayImage equalized = histogram_equalize(img);
    GrayImage enhanced = fft_enhance(equalized, cfg.fft_block, cfg.fft_k);
    BinaryImage binarized = binarize(enhanced, cfg.threshold);
    OrientationField orientation =
        estimate_orientation(binary_to_gray(binarized, 255, 0), cfg.orientation_block);
    cleaned = morph_cleanup(binarized, cfg.spur_iters);
    if (stages != nullptr) {
      stages->equalized = std::move(equalized);
      stages->enhanced = std::move(enhanced);
      stages->binarized = std::move(binarized);
      stages->orientation = std::move(orientation);
      stages->cleaned = cleaned;
    }
  }

  BinaryImage skeleton = thin(cleaned);
  std::vector<MinutiaPoint> minutiae = find_minutiae(skeleton);
  BinaryImage separated = disconnect_at_minutiae(skeleton, minutiae);
  // Paths need at least two pixels regardless of the configured floor.
  const int floor_px = cfg.min_ridge_px < 2 ? 2 : cfg.min_ridge_px;
  std::vector<PixelSet> components = label_components(separated, floor_px);

  CompressionResult result;
  result.minutiae = std::move(minutiae);
  result.ridges.reserve(components.size());
  for (const PixelSet& comp : components) {
    result.ridges.push_back(order_ridge_pixels(comp));
  }
  result.compressed.width = static_cast<std::uint16_t>(img.width);
  result.compressed.height = static_cast<std::uint16_t>(img.height);
  result.compressed.ridges.reserve(result.ridges.size());
  for (const RidgePath& path : result.ridges) {
    result.compressed.ridges.push_back(fit_ridge(path));
  }
  if (stages != nullptr) {
    stages->skeleton = std::move(skeleton);
    stages->separated = std::move(separated);
  }
  return result;
}

BinaryImage render_paths(int width, int height, const std::vector<RidgePath>& ridges) {
  BinaryImage out(width, height);
  for (const RidgePath& path : ridges) {
    for (Pixel p : path) {
      if (out.in_bounds(p.x, p.y)) out.at(p.x, p.y) = 1;
    }
  }
  return out;
}

}  // namespace fpbz
