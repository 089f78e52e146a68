#include "frametour/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "frametour/errors.hpp"
#include "frametour/linalg.hpp"
#include "frametour/rng.hpp"

namespace frametour {
namespace {

constexpr double kRepairTol = 1e-6;  // frame files this close to orthonormal get fixed up
constexpr double kTorusR = 2.0;
constexpr double kTorusr = 1.0;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_cell(const std::string& cell, const std::string& where) {
  if (cell.empty()) throw parse_error(where + ": missing value");
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw parse_error(where + ": cannot parse '" + cell + "' as a number");
  }
  if (!std::isfinite(value)) throw parse_error(where + ": non-finite value '" + cell + "'");
  return value;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Eigen::MatrixXd parse_numeric_grid(const std::vector<std::string>& lines,
                                   const std::string& path) {
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto fields = split_fields(lines[li]);
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row.push_back(parse_cell(fields[c], path + ": row " + std::to_string(li + 1) + ", field " +
                                              std::to_string(c + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw parse_error(path + ": row " + std::to_string(li + 1) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error(path + ": no numeric rows");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows.front().size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void write_frames_long(std::ofstream& out, const std::vector<Frame>& frames) {
  out << "step,row,col,value\n";
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const auto& b = frames[k].basis();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        out << k << ',' << r << ',' << c << ',' << format_double(b(r, c)) << '\n';
      }
    }
  }
}

}  // namespace

Dataset load_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw parse_error(path + ": empty file");

  const auto header = split_fields(lines[0]);
  std::set<std::string> seen;
  for (const auto& name : header) {
    if (name.empty()) throw parse_error(path + ": empty column name in header");
    if (!seen.insert(name).second) {
      throw parse_error(path + ": duplicate column name '" + name + "'");
    }
  }
  const std::size_t p = header.size();

  std::vector<std::vector<double>> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto fields = split_fields(lines[li]);
    if (fields.size() != p) {
      throw parse_error(path + ": row " + std::to_string(li) + " has " +
                        std::to_string(fields.size()) + " fields, expected " + std::to_string(p));
    }
    std::vector<double> row(p);
    for (std::size_t c = 0; c < p; ++c) {
      row[c] = parse_cell(fields[c],
                          path + ": row " + std::to_string(li) + ", column '" + header[c] + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw invalid_input(path + ": dataset needs at least 2 rows");

  Dataset d;
  d.column_names = header;
  d.values.resize(rows.size(), p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < p; ++c) d.values(r, c) = rows[r][c];
  }
  return d;
}

void write_csv(const Dataset& dataset, const std::string& path) {
  auto out = open_out(path);
  for (int c = 0; c < dataset.p(); ++c) {
    out << (c ? "," : "") << csv_quote(dataset.column_names[c]);
  }
  out << '\n';
  for (int r = 0; r < dataset.n(); ++r) {
    for (int c = 0; c < dataset.p(); ++c) {
      out << (c ? "," : "") << format_double(dataset.values(r, c));
    }
    out << '\n';
  }
  if (!out) throw io_error("failed writing '" + path + "'");
}

Dataset standardize(const Dataset& dataset) {
  if (dataset.n() < 2) throw invalid_input("standardize: need at least 2 rows");
  Dataset out = dataset;
  const double n1 = static_cast<double>(dataset.n() - 1);
  for (int c = 0; c < out.p(); ++c) {
    auto col = out.values.col(c);
    // two sweeps push the residual mean/scale error to machine level
    for (int sweep = 0; sweep < 2; ++sweep) {
      col.array() -= col.mean();
      const double sd = std::sqrt(col.squaredNorm() / n1);
      if (sweep == 0 && sd < 1e-14 * std::max(1.0, std::abs(dataset.values.col(c).mean()))) {
        throw degenerate_input("standardize: column '" + dataset.column_names[c] +
                               "' has zero variance");
      }
      if (sd > 0.0) col /= sd;
    }
  }
  return out;
}

Dataset negate_columns(const Dataset& dataset, const std::vector<std::string>& columns) {
  Dataset out = dataset;
  for (const auto& name : columns) {
    const auto it =
        std::find(out.column_names.begin(), out.column_names.end(), name);
    if (it == out.column_names.end()) {
      throw invalid_input("negate_columns: no column named '" + name + "'");
    }
    out.values.col(it - out.column_names.begin()) *= -1.0;
  }
  return out;
}

PcaResult pca(const Dataset& dataset) {
  const int n = dataset.n();
  const int p = dataset.p();
  if (n < 2) throw invalid_input("pca: need at least 2 rows");
  const Eigen::MatrixXd centered =
      dataset.values.rowwise() - dataset.values.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw numerical_failure("pca: svd did not converge");

  PcaResult res;
  res.rotation = svd.matrixV();
  res.variances = Eigen::VectorXd::Zero(p);
  const Eigen::VectorXd sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    res.variances(i) = sv(i) * sv(i) / static_cast<double>(n - 1);
  }
  // deterministic sign: largest loading of each component is positive
  for (int c = 0; c < p; ++c) {
    Eigen::Index imax = 0;
    res.rotation.col(c).cwiseAbs().maxCoeff(&imax);
    if (res.rotation(imax, c) < 0.0) res.rotation.col(c) *= -1.0;
  }
  res.scores = centered * res.rotation;

  double total = 0.0;
  for (int c = 0; c < p; ++c) total += res.variances(c);
  if (!(total > 0.0)) throw degenerate_input("pca: data has zero total variance");
  res.cumulative_proportion.resize(p);
  double running = 0.0;
  for (int c = 0; c < p; ++c) {
    running += res.variances(c);
    res.cumulative_proportion(c) = running / total;
  }
  res.cumulative_proportion(p - 1) = running / total;  // exactly 1 by construction
  return res;
}

namespace {

// Sine benchmark: the phase runs over two full periods on an even midpoint
// grid, and the x column is scaled so the curve's aspect stays near unity.
// That keeps in-plane rotations of the raw data meaningful: the curve stays a
// function of x at moderate rotations and folds over at steep ones.
constexpr double kSinePeriods = 2.0;
constexpr double kSineXScale = 0.365;

double sine_phase(int i, int n) {
  const double half_span = kSinePeriods * M_PI;
  return -half_span + 2.0 * half_span * (i + 0.5) / n;
}

}  // namespace

Dataset generate_sine(int n, double noise_sd, std::uint64_t seed) {
  if (n < 10) throw invalid_input("generate_sine: need n >= 10");
  if (noise_sd < 0.0) throw invalid_input("generate_sine: noise_sd must be >= 0");
  Rng rng(seed);
  Dataset d;
  d.column_names = {"x", "y"};
  d.values.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    const double x = sine_phase(i, n);
    d.values(i, 0) = kSineXScale * x;
    d.values(i, 1) = std::sin(x) + noise_sd * rng.normal();
  }
  return d;
}

Dataset generate_sine_in_noise(int n, double noise_sd, std::uint64_t seed) {
  if (n < 10) throw invalid_input("generate_sine_in_noise: need n >= 10");
  if (noise_sd < 0.0) throw invalid_input("generate_sine_in_noise: noise_sd must be >= 0");
  Rng rng(seed);
  Dataset d;
  d.column_names = {"noise1", "noise2", "x", "y"};
  d.values.resize(n, 4);
  for (int i = 0; i < n; ++i) {
    d.values(i, 0) = rng.normal();
    d.values(i, 1) = rng.normal();
    const double x = sine_phase(i, n);
    d.values(i, 2) = kSineXScale * x;
    d.values(i, 3) = std::sin(x) + noise_sd * rng.normal();
  }
  return d;
}

void export_path(const std::vector<Frame>& frames, const std::string& path, ExportFormat format) {
  if (frames.empty()) throw invalid_input("export_path: empty path");
  auto out = open_out(path);
  if (format == ExportFormat::csv) {
    write_frames_long(out, frames);
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& frame : frames) {
      nlohmann::json mat = nlohmann::json::array();
      const auto& b = frame.basis();
      for (Eigen::Index r = 0; r < b.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(b(r, c));
        mat.push_back(std::move(row));
      }
      arr.push_back(std::move(mat));
    }
    out << arr.dump(2) << '\n';
  }
  if (!out) throw io_error("failed writing '" + path + "'");
}

void export_path(const InterpolationPath& path, const std::string& file, ExportFormat format) {
  export_path(path.frames, file, format);
}

void export_path(const GeodesicPath& path, const std::string& file, ExportFormat format) {
  export_path(path.frames, file, format);
}

std::vector<Frame> import_path(const std::string& file) {
  const auto lines = read_lines(file);
  if (lines.empty()) throw parse_error(file + ": empty file");

  // JSON when the first non-space character opens an array
  const auto first = lines[0].find_first_not_of(" \t");
  if (first != std::string::npos && lines[0][first] == '[') {
    std::ifstream in(file, std::ios::binary);
    nlohmann::json arr;
    try {
      in >> arr;
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(file + ": " + e.what());
    }
    std::vector<Frame> frames;
    for (const auto& mat : arr) {
      const std::size_t p = mat.size();
      const std::size_t d = p ? mat[0].size() : 0;
      Eigen::MatrixXd m(p, d);
      for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < d; ++c) m(r, c) = mat[r][c].get<double>();
      }
      frames.emplace_back(std::move(m));
    }
    if (frames.empty()) throw parse_error(file + ": no frames");
    return frames;
  }

  if (split_fields(lines[0]) != std::vector<std::string>{"step", "row", "col", "value"}) {
    throw parse_error(file + ": expected header step,row,col,value");
  }
  int max_step = -1, max_row = -1, max_col = -1;
  struct Entry {
    int step, row, col;
    double value;
  };
  std::vector<Entry> entries;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto f = split_fields(lines[li]);
    if (f.size() != 4) throw parse_error(file + ": row " + std::to_string(li) + " malformed");
    const std::string where = file + ": row " + std::to_string(li);
    Entry e{static_cast<int>(parse_cell(f[0], where)), static_cast<int>(parse_cell(f[1], where)),
            static_cast<int>(parse_cell(f[2], where)), parse_cell(f[3], where)};
    max_step = std::max(max_step, e.step);
    max_row = std::max(max_row, e.row);
    max_col = std::max(max_col, e.col);
    entries.push_back(e);
  }
  if (entries.empty()) throw parse_error(file + ": no entries");
  const std::size_t per_frame = static_cast<std::size_t>(max_row + 1) * (max_col + 1);
  if (entries.size() != per_frame * static_cast<std::size_t>(max_step + 1)) {
    throw parse_error(file + ": incomplete frame grid");
  }
  std::vector<Eigen::MatrixXd> mats(max_step + 1,
                                    Eigen::MatrixXd::Constant(max_row + 1, max_col + 1,
                                                              std::nan("")));
  for (const auto& e : entries) mats[e.step](e.row, e.col) = e.value;
  std::vector<Frame> frames;
  frames.reserve(mats.size());
  for (auto& m : mats) {
    if (!m.allFinite()) throw parse_error(file + ": incomplete frame grid");
    frames.emplace_back(std::move(m));
  }
  return frames;
}

void export_projection_geometry(const std::vector<Frame>& frames, const std::string& file,
                                int n_samples, std::uint64_t seed) {
  if (frames.empty()) throw invalid_input("export_projection_geometry: empty path");
  if (n_samples < 0) throw invalid_input("export_projection_geometry: n_samples must be >= 0");
  const int p = frames.front().p();
  const int d = frames.front().d();
  Rng rng(seed);
  auto out = open_out(file);

  if (d == 1) {
    out << "kind,step";
    for (int c = 0; c < p; ++c) out << ",c" << (c + 1);
    out << '\n';
    for (std::size_t k = 0; k < frames.size(); ++k) {
      out << "path," << k;
      for (int c = 0; c < p; ++c) out << ',' << format_double(frames[k].basis()(c, 0));
      out << '\n';
    }
    for (int s = 0; s < n_samples; ++s) {
      Eigen::VectorXd v(p);
      for (int c = 0; c < p; ++c) v(c) = rng.normal();
      v.normalize();
      out << "surface," << s;
      for (int c = 0; c < p; ++c) out << ',' << format_double(v(c));
      out << '\n';
    }
  } else if (d == 2 && p == 3) {
    // Torus view of 2-frames in R^3: azimuth of the first direction and the
    // angle of the second direction inside the first one's complement.
    const auto torus_point = [](double alpha, double beta) {
      const double ring = kTorusR + kTorusr * std::cos(beta);
      return Eigen::Vector3d(ring * std::cos(alpha), ring * std::sin(alpha),
                             kTorusr * std::sin(beta));
    };
    out << "kind,step,x,y,z\n";
    for (std::size_t k = 0; k < frames.size(); ++k) {
      const Eigen::Vector3d u = frames[k].basis().col(0);
      const Eigen::Vector3d v = frames[k].basis().col(1);
      const double alpha = std::atan2(u(1), u(0));
      Eigen::Vector3d a = Eigen::Vector3d::UnitZ().cross(u);
      if (a.norm() < 1e-9) a = Eigen::Vector3d::UnitX().cross(u);
      a.normalize();
      const Eigen::Vector3d b = u.cross(a);
      const double beta = std::atan2(v.dot(b), v.dot(a));
      const Eigen::Vector3d pt = torus_point(alpha, beta);
      out << "path," << k << ',' << format_double(pt(0)) << ',' << format_double(pt(1)) << ','
          << format_double(pt(2)) << '\n';
    }
    for (int s = 0; s < n_samples; ++s) {
      const Eigen::Vector3d pt =
          torus_point(rng.uniform(0.0, 2.0 * M_PI), rng.uniform(0.0, 2.0 * M_PI));
      out << "surface," << s << ',' << format_double(pt(0)) << ',' << format_double(pt(1)) << ','
          << format_double(pt(2)) << '\n';
    }
  } else {
    throw invalid_input(
        "export_projection_geometry: supported views are d=1 (sphere) and d=2 with p=3 (torus)");
  }
  if (!out) throw io_error("failed writing '" + file + "'");
}

void export_trace(const TourTrace& trace, const std::string& file) {
  auto out = open_out(file);
  out << "step_id,target_id,event,index_value\n";
  for (const auto& rec : trace.records) {
    out << rec.step_id << ',' << rec.target_id << ',' << to_string(rec.event) << ',';
    if (rec.index_value) out << format_double(*rec.index_value);
    out << '\n';
  }
  if (!out) throw io_error("failed writing '" + file + "'");
}

void export_trace_frames(const TourTrace& trace, const std::string& file) {
  auto out = open_out(file);
  out << "step_id,row,col,value\n";
  for (const auto& rec : trace.records) {
    const auto& b = rec.frame.basis();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        out << rec.step_id << ',' << r << ',' << c << ',' << format_double(b(r, c)) << '\n';
      }
    }
  }
  if (!out) throw io_error("failed writing '" + file + "'");
}

LoadedFrame load_frame_csv(const std::string& path, const Tolerances& tols) {
  const Eigen::MatrixXd m = parse_numeric_grid(read_lines(path), path);
  if (is_orthonormal(m, tols.orth_tol)) return LoadedFrame{Frame(m, tols), false};
  if (is_orthonormal(m, kRepairTol)) return LoadedFrame{orthonormalize(m, tols), true};
  Eigen::MatrixXd gram = m.transpose() * m;
  gram.diagonal().array() -= 1.0;
  throw invalid_input(path + ": frame is not orthonormal (max deviation " +
                      format_double(gram.cwiseAbs().maxCoeff()) + ", repair limit " +
                      format_double(kRepairTol) + ")");
}

void write_frame_csv(const Frame& frame, const std::string& path) {
  auto out = open_out(path);
  const auto& b = frame.basis();
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      out << (c ? "," : "") << format_double(b(r, c));
    }
    out << '\n';
  }
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace frametour
