#include "vqtune/frame.hpp"

#include <stdexcept>
#include <string>

namespace vqtune {

VideoFrame::VideoFrame(Plane luma, Plane chroma_u, Plane chroma_v)
    : y(std::move(luma)), u(std::move(chroma_u)), v(std::move(chroma_v)) {
  const Eigen::Index w = y.cols();
  const Eigen::Index h = y.rows();
  if (w < 2 || h < 2 || w % 2 != 0 || h % 2 != 0) {
    throw std::invalid_argument("frame dimensions must be even and >= 2, got " +
                                std::to_string(w) + "x" + std::to_string(h));
  }
  if (u.cols() != w / 2 || u.rows() != h / 2 || v.cols() != w / 2 || v.rows() != h / 2) {
    throw std::invalid_argument("chroma planes must be half the luma dimensions");
  }
}

VideoFrame VideoFrame::black(Eigen::Index width, Eigen::Index height) {
  return VideoFrame(Plane::Zero(height, width), Plane::Zero(height / 2, width / 2),
                    Plane::Zero(height / 2, width / 2));
}

VideoSequence::VideoSequence(std::vector<VideoFrame> frame_list, int num, int den)
    : frames(std::move(frame_list)), fps_num(num), fps_den(den) {
  if (frames.empty()) throw std::invalid_argument("sequence must contain at least one frame");
  if (fps_den <= 0) throw std::invalid_argument("fps denominator must be positive");
  for (const VideoFrame& f : frames) {
    if (!f.same_dimensions(frames.front())) {
      throw std::invalid_argument("all frames in a sequence must share dimensions");
    }
  }
}

VideoSequence first_frames(const VideoSequence& seq, std::size_t n) {
  if (n < 1) throw std::invalid_argument("frame count must be >= 1");
  if (n >= seq.frame_count()) return seq;
  return VideoSequence(
      std::vector<VideoFrame>(seq.frames.begin(), seq.frames.begin() + static_cast<long>(n)),
      seq.fps_num, seq.fps_den);
}

VideoSequence extend_sequence(const VideoSequence& seq, std::size_t target_frames) {
  if (target_frames < 1) throw std::invalid_argument("target frame count must be >= 1");
  std::vector<VideoFrame> out;
  out.reserve(target_frames);
  for (std::size_t i = 0; i < target_frames; ++i) {
    out.push_back(seq.frames[i % seq.frame_count()]);
  }
  return VideoSequence(std::move(out), seq.fps_num, seq.fps_den);
}

}  // namespace vqtune
