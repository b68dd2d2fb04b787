#include "tconv/cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tconv/errors.hpp"

namespace tconv::cli {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string samples_csv(const std::vector<MomentSample>& samples) {
  std::ostringstream os;
  if (samples.empty()) return "";
  const auto k = samples.front().v.size();
  for (Eigen::Index i = 0; i < k; ++i) os << (i ? "," : "") << "v_" << i + 1;
  for (Eigen::Index i = 0; i < k; ++i) os << ",mu_" << i + 1;
  os << '\n';
  for (const auto& s : samples) {
    for (Eigen::Index i = 0; i < k; ++i) os << (i ? "," : "") << num(s.v[i]);
    for (Eigen::Index i = 0; i < k; ++i) os << ',' << num(s.mu[i]);
    os << '\n';
  }
  return os.str();
}

std::string polytope_svg(const Polytope& P, const std::vector<MomentSample>& samples) {
  if (P.ambient_dim() != 2) throw InputError("SVG rendering needs a two-dimensional abelian algebra");
  std::vector<Eigen::Vector2d> verts;
  for (const auto& v : P.vertices()) verts.emplace_back(v[0].get_d(), v[1].get_d());

  // Counter-clockwise order around the centroid; fine for drawing.
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& v : verts) c += v;
  c /= static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });

  Eigen::Vector2d lo = verts.front(), hi = verts.front();
  for (const auto& v : verts) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double size = 400, pad = 20;
  auto map = [&](double x, double y) {
    return Eigen::Vector2d(pad + (x - lo.x()) / span * size, pad + size - (y - lo.y()) / span * size);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\"" << size + 2 * pad
     << "\">\n";
  os << "  <polygon fill=\"#e8eef8\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto p = map(verts[i].x(), verts[i].y());
    os << (i ? " " : "") << px(p.x()) << ',' << px(p.y());
  }
  os << "\"/>\n";
  for (const auto& s : samples) {
    const auto p = map(s.mu[0], s.mu[1]);
    os << "  <circle cx=\"" << px(p.x()) << "\" cy=\"" << px(p.y()) << "\" r=\"1.5\" fill=\"#c0392b\"/>\n";
  }
  for (const auto& v : verts) {
    const auto p = map(v.x(), v.y());
    os << "  <circle cx=\"" << px(p.x()) << "\" cy=\"" << px(p.y()) << "\" r=\"3\" fill=\"#1f4e9c\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tconv::cli
