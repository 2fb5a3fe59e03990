#include "conelab/spaces.hpp"

#include <algorithm>
#include <string>

namespace conelab {

double GalleryRow::value(std::string_view name) const {
  for (const auto& [key, v] : values)
    if (key == name) return v;
  throw InvalidInput("no column named " + std::string(name));
}

bool GalleryRow::flag(std::string_view name) const {
  for (const auto& [key, v] : flags)
    if (key == name) return v;
  throw InvalidInput("no flag named " + std::string(name));
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L2: return "L2";
    case NormKind::L1: return "L1";
    case NormKind::SUP: return "SUP";
    case NormKind::TRIPLE: return "TRIPLE";
  }
  return "?";
}

NormKind norm_kind_from_string(std::string_view name) {
  if (name == "L2" || name == "l2") return NormKind::L2;
  if (name == "L1" || name == "l1") return NormKind::L1;
  if (name == "SUP" || name == "sup") return NormKind::SUP;
  if (name == "TRIPLE" || name == "triple") return NormKind::TRIPLE;
  throw InvalidInput("unknown norm kind: " + std::string(name));
}

double inner(const Vector& f, const Vector& x) {
  if (f.size() != x.size()) throw InvalidInput("dimension mismatch in pairing");
  return f.coords().dot(x.coords());
}

double triple_alpha(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("dimension must be positive");
  // 4^-dim underflows harmlessly past dim ~ 537.
  return 1.0 + std::sqrt((1.0 - std::ldexp(1.0, -2 * static_cast<int>(std::min<Eigen::Index>(dim, 600)))) / 3.0);
}

std::vector<GalleryRow> weak_null_gap(const std::vector<Vector>& family, Eigen::Index probes,
                                      double probe_threshold, double norm_floor) {
  if (family.empty()) throw InvalidInput("empty family");
  const Eigen::Index dim = family.front().size();
  if (probes < 1 || probes > dim) throw InvalidInput("probe count must lie in [1, N]");

  std::vector<GalleryRow> rows;
  rows.reserve(family.size());
  long index = 1;
  for (const auto& z : family) {
    if (z.size() != dim) throw InvalidInput("family members must share a dimension");
    GalleryRow row;
    row.n = index++;
    const double probe = z.coords().head(probes).cwiseAbs().maxCoeff();
    const double nz = norm(z);
    row.set("probe_max", probe);
    row.set("norm", nz);
    row.flags.emplace_back("pc_failure_witness", probe < probe_threshold && nz >= norm_floor);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace conelab
