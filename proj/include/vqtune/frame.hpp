#pragma once

#include "vqtune/plane.hpp"

#include <cstddef>
#include <vector>

namespace vqtune {

// One planar 4:2:0 frame, 8 bits per sample. Width and height are even and
// at least 2; chroma planes are half size in both dimensions.
struct VideoFrame {
  Plane y;
  Plane u;
  Plane v;

  VideoFrame() = default;
  VideoFrame(Plane luma, Plane chroma_u, Plane chroma_v);

  Eigen::Index width() const { return y.cols(); }
  Eigen::Index height() const { return y.rows(); }

  bool same_dimensions(const VideoFrame& other) const {
    return width() == other.width() && height() == other.height();
  }
  bool operator==(const VideoFrame& other) const {
    return same_dimensions(other) && (y == other.y).all() && (u == other.u).all() &&
           (v == other.v).all();
  }

  static VideoFrame black(Eigen::Index width, Eigen::Index height);
};

// Nonempty, dimension-homogeneous list of frames plus a frame-rate ratio.
struct VideoSequence {
  std::vector<VideoFrame> frames;
  int fps_num = 25;
  int fps_den = 1;

  VideoSequence() = default;
  VideoSequence(std::vector<VideoFrame> frame_list, int num, int den);

  std::size_t frame_count() const { return frames.size(); }
  Eigen::Index width() const { return frames.front().width(); }
  Eigen::Index height() const { return frames.front().height(); }

  bool operator==(const VideoSequence& other) const {
    return fps_num == other.fps_num && fps_den == other.fps_den && frames == other.frames;
  }
};

// First min(n, len) frames; n >= 1.
VideoSequence first_frames(const VideoSequence& seq, std::size_t n);

// Truncates to target_frames, or repeats frames cyclically from the start
// until the target length is reached.
VideoSequence extend_sequence(const VideoSequence& seq, std::size_t target_frames);

}  // namespace vqtune
