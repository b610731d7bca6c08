#include "neighborly/point_cloud.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace neighborly {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long header_value(const std::string& field, const std::string& key) {
  const std::string f = trim(field);
  if (f.rfind(key + "=", 0) != 0) throw std::invalid_argument("point cloud header: expected '" + key + "=<value>'");
  return std::stol(f.substr(key.size() + 1));
}

}  // namespace

AnyCloud read_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("point cloud: empty input");
  const auto header = split(trim(line), ',');
  if (header.size() != 3) throw std::invalid_argument("point cloud header must be 'd=<dim>,n=<count>,exact=<0|1>'");
  const long d = header_value(header[0], "d");
  const long n = header_value(header[1], "n");
  const long exact = header_value(header[2], "exact");
  if (d < 0 || n < 1 || (exact != 0 && exact != 1)) throw std::invalid_argument("point cloud header: bad values");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (static_cast<long>(fields.size()) != d) {
      throw std::invalid_argument("point cloud row " + std::to_string(rows.size()) + ": expected " +
                                  std::to_string(d) + " coordinates");
    }
    rows.push_back(std::move(fields));
  }
  if (static_cast<long>(rows.size()) != n) {
    throw std::invalid_argument("point cloud: header says n=" + std::to_string(n) + " but found " +
                                std::to_string(rows.size()) + " rows");
  }

  if (exact == 1) {
    RationalMatrix pts(n, d);
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < d; ++j) pts(i, j) = parse_rational(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return ExactCloud(std::move(pts));
  }
  Matrix<double> pts(n, d);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < d; ++j) {
      const std::string& f = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      pts(i, j) = f.find('/') != std::string::npos ? to_double(parse_rational(f)) : std::stod(f);
    }
  }
  return FloatCloud(std::move(pts));
}

AnyCloud read_cloud_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point cloud file '" + path + "'");
  return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const ExactCloud& cloud) {
  out << "d=" << cloud.dimension() << ",n=" << cloud.size() << ",exact=1\n";
  for (Index i = 0; i < cloud.size(); ++i) {
    for (Index j = 0; j < cloud.dimension(); ++j) {
      if (j) out << ',';
      out << to_string(cloud.points(i, j));
    }
    out << '\n';
  }
}

void write_cloud_csv(std::ostream& out, const FloatCloud& cloud) {
  out << "d=" << cloud.dimension() << ",n=" << cloud.size() << ",exact=0\n";
  char buf[64];
  for (Index i = 0; i < cloud.size(); ++i) {
    for (Index j = 0; j < cloud.dimension(); ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", cloud.points(i, j));
      out << buf;
    }
    out << '\n';
  }
}

FloatCloud to_float(const ExactCloud& cloud) {
  Matrix<double> pts(cloud.size(), cloud.dimension());
  for (Index i = 0; i < cloud.size(); ++i) {
    for (Index j = 0; j < cloud.dimension(); ++j) pts(i, j) = to_double(cloud.points(i, j));
  }
  return FloatCloud(std::move(pts), cloud.label);
}

ExactCloud to_exact(const FloatCloud& cloud) {
  RationalMatrix pts(cloud.size(), cloud.dimension());
  for (Index i = 0; i < cloud.size(); ++i) {
    for (Index j = 0; j < cloud.dimension(); ++j) pts(i, j) = Rational(cloud.points(i, j));
  }
  return ExactCloud(std::move(pts), cloud.label);
}

}  // namespace neighborly
