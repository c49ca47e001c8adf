#include "orofacial/cohort.hpp"

#include <filesystem>

namespace orofacial {

std::optional<Group> CohortManifest::group_of(const std::string& subject_id) const {
  for (const auto& e : entries) {
    if (e.subject_id == subject_id) return e.group;
  }
  return std::nullopt;
}

std::string CohortManifest::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace orofacial
