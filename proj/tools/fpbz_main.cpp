// Command-line front end: compress, decompress, evaluate, info.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpbz/bezier.hpp"
#include "fpbz/fileio.hpp"
#include "fpbz/pgm.hpp"
#include "fpbz/pipeline.hpp"
#include "fpbz/reconstruct.hpp"

namespace {

struct CommonOpts {
  fpbz::PipelineConfig cfg;
  std::string threshold_str = "auto";
  bool skip_preprocess = false;
};

void add_config_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--fft-block", o.cfg.fft_block, "enhancement tile size");
  cmd->add_option("--fft-k", o.cfg.fft_k, "spectral gain exponent");
  cmd->add_option("--threshold", o.threshold_str,
                  "binarization threshold: auto or 0..255");
  cmd->add_option("--orientation-block", o.cfg.orientation_block,
                  "orientation estimation block size");
  cmd->add_option("--spur-iters", o.cfg.spur_iters, "spur removal iterations");
  cmd->add_option("--min-ridge-px", o.cfg.min_ridge_px,
                  "minimum pixels per kept ridge");
  cmd->add_option("--tol", o.cfg.tol, "overlap tolerance in pixels");
  cmd->add_flag("--skip-preprocess", o.skip_preprocess,
                "treat the input as a binary skeleton image (pixel < 128 is "
                "foreground)");
}

void resolve_threshold(CommonOpts& o) {
  if (o.threshold_str == "auto") {
    o.cfg.threshold = fpbz::kAutoThreshold;
  } else {
    try {
      std::size_t used = 0;
      o.cfg.threshold = std::stoi(o.threshold_str, &used);
      if (used != o.threshold_str.size()) throw std::invalid_argument(o.threshold_str);
    } catch (const std::exception&) {
      throw std::invalid_argument("--threshold expects auto or an integer, got '" +
                                  o.threshold_str + "'");
    }
  }
  fpbz::validate_config(o.cfg);
}

std::string strip_extension(const std::string& path) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string();
}

void save_pgm(const std::string& path, const fpbz::GrayImage& img) {
  fpbz::write_file(path, fpbz::write_pgm(img));
}

fpbz::GrayImage orientation_image(const fpbz::OrientationField& field, int width,
                                  int height) {
  fpbz::GrayImage out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double a = field.at(x / field.block_size, y / field.block_size);
      out.at(x, y) = static_cast<std::uint8_t>(
          std::lround(a / 3.14159265358979323846 * 255.0));
    }
  }
  return out;
}

void dump_stages(const std::string& dir, const fpbz::PipelineStages& st,
                 const fpbz::CompressionResult& res, int width, int height,
                 bool skip_preprocess) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  auto mask = [](const fpbz::BinaryImage& b) {
    return fpbz::binary_to_gray(b, 0, 255);
  };
  if (!skip_preprocess) {
    save_pgm(path("01_equalized.pgm"), st.equalized);
    save_pgm(path("02_enhanced.pgm"), st.enhanced);
    save_pgm(path("03_binarized.pgm"), mask(st.binarized));
    save_pgm(path("04_orientation.pgm"), orientation_image(st.orientation, width, height));
    save_pgm(path("05_cleaned.pgm"), mask(st.cleaned));
  }
  save_pgm(path("06_skeleton.pgm"), mask(st.skeleton));
  save_pgm(path("07_separated.pgm"), mask(st.separated));
  save_pgm(path("08_ridges.pgm"), mask(fpbz::render_paths(width, height, res.ridges)));
}

int cmd_compress(const std::string& input, const std::string& output, CommonOpts& o,
                 const std::string& stages_dir, const std::string& ridges_file) {
  resolve_threshold(o);
  const std::vector<std::uint8_t> raw = fpbz::read_file(input);
  const fpbz::GrayImage img = fpbz::read_pgm(raw);
  fpbz::PipelineStages stages;
  fpbz::PipelineStages* sink =
      (!stages_dir.empty() || !ridges_file.empty()) ? &stages : nullptr;
  const fpbz::CompressionResult res =
      fpbz::compress_image(img, o.cfg, o.skip_preprocess, sink);
  const std::vector<std::uint8_t> encoded = fpbz::encode(res.compressed);
  fpbz::write_file(output, encoded);
  if (!stages_dir.empty()) {
    dump_stages(stages_dir, stages, res, img.width, img.height, o.skip_preprocess);
  }
  if (!ridges_file.empty()) {
    std::string text = fpbz::dump_ridges(res.ridges);
    fpbz::write_file(ridges_file, std::vector<std::uint8_t>(text.begin(), text.end()));
  }
  std::printf("ridges=%zu in=%zu out=%zu ratio=%.2f\n", res.compressed.ridges.size(),
              raw.size(), encoded.size(),
              fpbz::compression_stats(raw.size(), encoded.size()));
  return 0;
}

int cmd_decompress(const std::string& input, const std::string& output) {
  const fpbz::CompressedFingerprint cf = fpbz::decode(fpbz::read_file(input));
  const fpbz::BinaryImage mask = fpbz::rasterize(cf);
  save_pgm(output, fpbz::binary_to_gray(mask, 0, 255));
  return 0;
}

int cmd_evaluate(const std::vector<std::string>& inputs, CommonOpts& o) {
  resolve_threshold(o);
  for (const std::string& input : inputs) {
    const fpbz::GrayImage img = fpbz::read_pgm(fpbz::read_file(input));
    const fpbz::CompressionResult res =
        fpbz::compress_image(img, o.cfg, o.skip_preprocess);
    // Score the quantized curves actually stored in the container.
    const fpbz::CompressedFingerprint stored =
        fpbz::decode(fpbz::encode(res.compressed));
    const fpbz::BinaryImage extracted =
        fpbz::render_paths(img.width, img.height, res.ridges);
    const fpbz::BinaryImage reconstructed = fpbz::rasterize(stored);
    const fpbz::OverlapReport report =
        fpbz::overlap_metrics(extracted, reconstructed, o.cfg.tol);

    const std::string stem = strip_extension(input);
    save_pgm(stem + "_overlay.pgm", fpbz::superimpose(extracted, reconstructed));

    std::string text = fpbz::report_to_text(report);
    text += "ridges: " + std::to_string(res.ridges.size()) + "\n";
    for (std::size_t i = 0; i < res.ridges.size(); ++i) {
      const fpbz::FitError fe = fpbz::fit_error(stored.ridges[i], res.ridges[i]);
      char line[96];
      std::snprintf(line, sizeof(line), "ridge_%zu: rms=%.4f max=%.4f\n", i, fe.rms,
                    fe.max);
      text += line;
    }
    fpbz::write_file(stem + "_report.txt",
                     std::vector<std::uint8_t>(text.begin(), text.end()));

    std::printf("%s: forward_cover=%.6f reverse_cover=%.6f mean_dist=%.6f "
                "max_dist=%.6f\n",
                input.c_str(), report.forward_cover, report.reverse_cover,
                report.mean_dist, report.max_dist);
  }
  return 0;
}

int cmd_info(const std::vector<std::string>& inputs) {
  for (const std::string& input : inputs) {
    const std::vector<std::uint8_t> bytes = fpbz::read_file(input);
    const fpbz::CompressedFingerprint cf = fpbz::decode(bytes);
    const std::size_t expected =
        fpbz::kCodecHeaderSize + fpbz::kCodecRidgeSize * cf.ridges.size();
    std::printf("magic=FPBZ version=1 width=%u height=%u ridges=%zu size=%zu "
                "expected=%zu\n",
                cf.width, cf.height, cf.ridges.size(), bytes.size(), expected);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CommonOpts compress_opts, evaluate_opts;
  std::string compress_in, compress_out, stages_dir, ridges_file;
  std::string decompress_in, decompress_out;
  std::vector<std::string> evaluate_in, info_in;

  // FPBZ_CONFIG seeds the defaults; command-line flags override per option.
  try {
    if (const char* env = std::getenv("FPBZ_CONFIG")) {
      fpbz::apply_config_file(compress_opts.cfg, env);
      evaluate_opts.cfg = compress_opts.cfg;
      if (compress_opts.cfg.threshold != fpbz::kAutoThreshold) {
        compress_opts.threshold_str = std::to_string(compress_opts.cfg.threshold);
        evaluate_opts.threshold_str = compress_opts.threshold_str;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"fingerprint ridge codec"};
  app.require_subcommand(1);

  CLI::App* compress = app.add_subcommand("compress", "compress a PGM fingerprint");
  compress->add_option("input", compress_in, "input .pgm")->required();
  compress->add_option("output", compress_out, "output .fbz")->required();
  add_config_flags(compress, compress_opts);
  compress->add_option("--dump-stages", stages_dir,
                       "directory for intermediate stage images");
  compress->add_option("--dump-ridges", ridges_file,
                       "file for the ordered ridge coordinate dump");

  CLI::App* decompress = app.add_subcommand("decompress", "render a .fbz to PGM");
  decompress->add_option("input", decompress_in, "input .fbz")->required();
  decompress->add_option("output", decompress_out, "output .pgm")->required();

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "compress, reconstruct and score one or more PGM inputs");
  evaluate->add_option("inputs", evaluate_in, "input .pgm files")->required();
  add_config_flags(evaluate, evaluate_opts);

  CLI::App* info = app.add_subcommand("info", "describe .fbz containers");
  info->add_option("inputs", info_in, "input .fbz files")->required();

  try {
    app.parse(argc, argv);
    if (compress->parsed()) {
      return cmd_compress(compress_in, compress_out, compress_opts, stages_dir,
                          ridges_file);
    }
    if (decompress->parsed()) {
      return cmd_decompress(decompress_in, decompress_out);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(evaluate_in, evaluate_opts);
    }
    if (info->parsed()) {
      return cmd_info(info_in);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
