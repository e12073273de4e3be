// Copyright 2026 The floorline Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Readers and writers for label masks (PGM), quad annotations, and line
// results (JSON). Readers reject anything that violates a type invariant.

#ifndef FLOORLINE_IO_HPP_
#define FLOORLINE_IO_HPP_

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"

namespace floorline {

enum class PgmFormat { kBinary /* P5 */, kAscii /* P2 */ };

namespace detail {

class PgmCursor {
 public:
  explicit PgmCursor(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns nullopt at end of input; throws `bad_kind` on a non-digit token.
  std::optional<long> next_uint(ErrorKind bad_kind, const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return std::nullopt;
    if (!std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(bad_kind, std::string("expected unsigned integer for ") + what);
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) throw Error(bad_kind, std::string(what) + " is too large");
      ++pos_;
    }
    if (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
        bytes_[pos_] != '#') {
      throw Error(bad_kind, std::string("unexpected character after ") + what);
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::string_view rest() const { return bytes_.substr(pos_); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a P5 (binary) or P2 (ASCII) PGM with maxval <= 255. Pixel values
/// are returned exactly as stored; palette checks are the caller's job.
inline LabelMask parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw Error(ErrorKind::kMalformedHeader, "missing P5/P2 magic number");
  }
  const bool binary = bytes[1] == '5';
  detail::PgmCursor cur(bytes);
  cur.advance(2);
  if (cur.remaining() == 0 || !std::isspace(static_cast<unsigned char>(cur.rest()[0]))) {
    throw Error(ErrorKind::kMalformedHeader, "magic number must be followed by whitespace");
  }
  const auto header = [&](const char* what) {
    const auto v = cur.next_uint(ErrorKind::kMalformedHeader, what);
    if (!v) throw Error(ErrorKind::kMalformedHeader, std::string("header ends before ") + what);
    return *v;
  };
  const long width = header("width");
  const long height = header("height");
  const long maxval = header("maxval");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kMalformedHeader, "width and height must be positive");
  }
  if (maxval > 255) {
    throw Error(ErrorKind::kMaxvalTooLarge, "maxval " + std::to_string(maxval) + " exceeds 255");
  }
  if (maxval == 0) throw Error(ErrorKind::kMalformedHeader, "maxval must be positive");
  if (width * height > 1'000'000'000L) {
    throw Error(ErrorKind::kMalformedHeader, "image is too large");
  }

  const auto count = static_cast<std::size_t>(width * height);
  std::vector<std::uint8_t> labels(count);
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (cur.remaining() == 0) {
      throw Error(ErrorKind::kTruncatedPayload, "no raster after header");
    }
    cur.advance(1);
    if (cur.remaining() < count) {
      throw Error(ErrorKind::kTruncatedPayload, "expected " + std::to_string(count) +
                                                    " raster bytes, found " +
                                                    std::to_string(cur.remaining()));
    }
    const std::string_view raster = cur.rest().substr(0, count);
    for (std::size_t i = 0; i < count; ++i) {
      labels[i] = static_cast<std::uint8_t>(raster[i]);
      if (labels[i] > maxval) {
        throw Error(ErrorKind::kMalformedPayload, "pixel value exceeds maxval");
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = cur.next_uint(ErrorKind::kMalformedPayload, "pixel value");
      if (!v) {
        throw Error(ErrorKind::kTruncatedPayload, "expected " + std::to_string(count) +
                                                      " pixel values, found " + std::to_string(i));
      }
      if (*v > maxval) throw Error(ErrorKind::kMalformedPayload, "pixel value exceeds maxval");
      labels[i] = static_cast<std::uint8_t>(*v);
    }
  }
  return LabelMask(static_cast<int>(width), static_cast<int>(height), std::move(labels));
}

/// P5 output is "P5\n<w> <h>\n255\n" followed by the raw row-major bytes.
/// P2 output uses the same header with one text row per image row.
inline std::string encode_pgm(const LabelMask& mask, PgmFormat format = PgmFormat::kBinary) {
  std::string out = (format == PgmFormat::kBinary ? "P5\n" : "P2\n") +
                    std::to_string(mask.width()) + " " + std::to_string(mask.height()) +
                    "\n255\n";
  const auto labels = mask.labels();
  if (format == PgmFormat::kBinary) {
    out.append(reinterpret_cast<const char*>(labels.data()), labels.size());
    return out;
  }
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (x > 0) out += ' ';
      out += std::to_string(mask.at(x, y));
    }
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIoFailure, "cannot read " + path.string());
  return data;
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot write " + path.string());
}

inline LabelMask read_label_mask(const std::filesystem::path& path) {
  try {
    return parse_pgm(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIoFailure) throw;
    throw Error(e.kind(), path.string() + ": " + std::string(e.what()));
  }
}

inline void write_label_mask(const LabelMask& mask, const std::filesystem::path& path,
                             PgmFormat format = PgmFormat::kBinary) {
  write_file(path, encode_pgm(mask, format));
}

// ---------------------------------------------------------------------------
// JSON documents

using Json = nlohmann::ordered_json;

struct AnnotationRecord {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<Quad> facades;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct FacadeLines {
  int id = 0;
  Orientation orientation = Orientation::kFront;
  std::optional<Point2> vp;
  std::vector<Line5Tuple> lines;

  friend bool operator==(const FacadeLines&, const FacadeLines&) = default;
};

struct LineResults {
  std::string image;
  std::vector<FacadeLines> facades;

  friend bool operator==(const LineResults&, const LineResults&) = default;
};

namespace detail {

inline std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + std::string(key);
}
inline std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

inline const Json& require(const Json& obj, const std::string& ptr, const char* key) {
  if (!obj.is_object()) throw SchemaError(ptr, "expected object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child(ptr, key), "missing required field");
  return *it;
}

inline double number(const Json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(ptr, "expected finite number");
  return d;
}

inline long long integer(const Json& v, const std::string& ptr) {
  if (!v.is_number_integer()) throw SchemaError(ptr, "expected integer");
  return v.get<long long>();
}

inline const std::string& string(const Json& v, const std::string& ptr) {
  if (!v.is_string()) throw SchemaError(ptr, "expected string");
  return v.get_ref<const std::string&>();
}

inline const Json::array_t& array(const Json& v, const std::string& ptr) {
  if (!v.is_array()) throw SchemaError(ptr, "expected array");
  return v.get_ref<const Json::array_t&>();
}

inline Orientation orientation(const Json& v, const std::string& ptr) {
  const auto o = parse_orientation(string(v, ptr));
  if (!o) throw SchemaError(ptr, "orientation must be one of left, right, front");
  return *o;
}

inline Point2 point(const Json& v, const std::string& ptr) {
  const auto& a = array(v, ptr);
  if (a.size() != 2) throw SchemaError(ptr, "expected [x, y]");
  return {number(a[0], child(ptr, 0)), number(a[1], child(ptr, 1))};
}

inline AnnotationRecord annotation_from_json(const Json& j, const std::string& ptr) {
  AnnotationRecord rec;
  rec.image_id = string(require(j, ptr, "image"), child(ptr, "image"));
  const long long w = integer(require(j, ptr, "width"), child(ptr, "width"));
  const long long h = integer(require(j, ptr, "height"), child(ptr, "height"));
  if (w <= 0 || w > 1'000'000) throw SchemaError(child(ptr, "width"), "must be positive");
  if (h <= 0 || h > 1'000'000) throw SchemaError(child(ptr, "height"), "must be positive");
  rec.width = static_cast<int>(w);
  rec.height = static_cast<int>(h);
  const std::string fptr = child(ptr, "facades");
  const auto& facades = array(require(j, ptr, "facades"), fptr);
  for (std::size_t i = 0; i < facades.size(); ++i) {
    const std::string qp = child(fptr, i);
    Quad q;
    const std::string cptr = child(qp, "quad");
    const auto& corners = array(require(facades[i], qp, "quad"), cptr);
    if (corners.size() != 4) throw SchemaError(cptr, "expected exactly 4 corners");
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string kp = child(cptr, k);
      q.corners[k] = point(corners[k], kp);
      if (q.corners[k].x < 0 || q.corners[k].x > rec.width) {
        throw SchemaError(child(kp, 0), "corner x outside [0, width]");
      }
      if (q.corners[k].y < 0 || q.corners[k].y > rec.height) {
        throw SchemaError(child(kp, 1), "corner y outside [0, height]");
      }
    }
    q.orientation = orientation(require(facades[i], qp, "orientation"), child(qp, "orientation"));
    if (!is_strictly_convex(q)) throw SchemaError(cptr, "quad is not strictly convex");
    rec.facades.push_back(q);
  }
  return rec;
}

inline Line5Tuple line_from_json(const Json& j, const std::string& ptr) {
  Line5Tuple l;
  l.xs = number(require(j, ptr, "xs"), child(ptr, "xs"));
  l.ys = number(require(j, ptr, "ys"), child(ptr, "ys"));
  l.xe = number(require(j, ptr, "xe"), child(ptr, "xe"));
  l.ye = number(require(j, ptr, "ye"), child(ptr, "ye"));
  const long long order = integer(require(j, ptr, "order"), child(ptr, "order"));
  if (order < 1 || order > kMaxFloorOrder) {
    throw SchemaError(child(ptr, "order"), "order must lie in 1..10");
  }
  l.order = static_cast<int>(order);
  if (l.xs > l.xe) throw SchemaError(ptr, "endpoints must satisfy xs <= xe");
  return l;
}

}  // namespace detail

inline Json to_json(const Quad& q) {
  Json corners = Json::array();
  for (const auto& p : q.corners) corners.push_back(Json::array({p.x, p.y}));
  return Json{{"quad", corners}, {"orientation", std::string(to_string(q.orientation))}};
}

inline Json to_json(const AnnotationRecord& rec) {
  Json facades = Json::array();
  for (const auto& q : rec.facades) facades.push_back(to_json(q));
  return Json{{"image", rec.image_id},
              {"width", rec.width},
              {"height", rec.height},
              {"facades", facades}};
}

inline Json to_json(const Line5Tuple& l) {
  return Json{{"xs", l.xs}, {"ys", l.ys}, {"xe", l.xe}, {"ye", l.ye}, {"order", l.order}};
}

inline Json to_json(const LineResults& results) {
  Json facades = Json::array();
  for (const auto& f : results.facades) {
    Json lines = Json::array();
    for (const auto& l : f.lines) lines.push_back(to_json(l));
    Json fj{{"id", f.id}, {"orientation", std::string(to_string(f.orientation))}};
    fj["vp"] = f.vp ? Json::array({f.vp->x, f.vp->y}) : Json(nullptr);
    fj["lines"] = lines;
    facades.push_back(fj);
  }
  return Json{{"image", results.image}, {"facades", facades}};
}

inline Json to_json(const Homography& h) {
  Json a = Json::array();
  for (double v : h.row_major()) a.push_back(v);
  return a;
}

inline Homography homography_from_json(const Json& j, const std::string& ptr = "") {
  const auto& a = detail::array(j, ptr);
  if (a.size() != 9) throw SchemaError(ptr, "expected 9 row-major entries");
  std::array<double, 9> v{};
  for (std::size_t i = 0; i < 9; ++i) v[i] = detail::number(a[i], detail::child(ptr, i));
  return Homography::from_row_major(v);
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

/// Accepts either one annotation object or an array of them.
inline std::vector<AnnotationRecord> parse_annotations(std::string_view text) {
  const Json j = parse_json(text);
  std::vector<AnnotationRecord> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(detail::annotation_from_json(j[i], detail::child("", i)));
    }
  } else {
    out.push_back(detail::annotation_from_json(j, ""));
  }
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// A single record is written as an object, anything else as an array.
inline std::string serialize_annotations(const std::vector<AnnotationRecord>& records) {
  if (records.size() == 1) return dump(to_json(records.front()));
  Json a = Json::array();
  for (const auto& r : records) a.push_back(to_json(r));
  return dump(a);
}

inline LineResults parse_lines(std::string_view text) {
  const Json j = parse_json(text);
  LineResults r;
  r.image = detail::string(detail::require(j, "", "image"), "/image");
  const auto& facades = detail::array(detail::require(j, "", "facades"), "/facades");
  for (std::size_t i = 0; i < facades.size(); ++i) {
    const std::string fp = detail::child("/facades", i);
    FacadeLines f;
    const long long id = detail::integer(detail::require(facades[i], fp, "id"),
                                         detail::child(fp, "id"));
    if (id < 0 || id > 1'000'000'000) throw SchemaError(detail::child(fp, "id"), "out of range");
    f.id = static_cast<int>(id);
    f.orientation = detail::orientation(detail::require(facades[i], fp, "orientation"),
                                        detail::child(fp, "orientation"));
    const Json& vp = detail::require(facades[i], fp, "vp");
    if (!vp.is_null()) f.vp = detail::point(vp, detail::child(fp, "vp"));
    const std::string lp = detail::child(fp, "lines");
    const auto& lines = detail::array(detail::require(facades[i], fp, "lines"), lp);
    for (std::size_t k = 0; k < lines.size(); ++k) {
      f.lines.push_back(detail::line_from_json(lines[k], detail::child(lp, k)));
    }
    r.facades.push_back(std::move(f));
  }
  return r;
}

inline std::string serialize_lines(const LineResults& results) { return dump(to_json(results)); }

inline std::vector<AnnotationRecord> read_annotations(const std::filesystem::path& path) {
  return parse_annotations(read_file(path));
}

inline void write_annotations(const std::vector<AnnotationRecord>& records,
                              const std::filesystem::path& path) {
  write_file(path, serialize_annotations(records));
}

inline LineResults read_lines(const std::filesystem::path& path) {
  return parse_lines(read_file(path));
}

inline void write_lines(const LineResults& results, const std::filesystem::path& path) {
  write_file(path, serialize_lines(results));
}

inline void write_json(const Json& j, const std::filesystem::path& path) {
  write_file(path, dump(j));
}

}  // namespace floorline

#endif  // FLOORLINE_IO_HPP_
