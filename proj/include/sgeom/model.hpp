#pragma once
// Model files.
//
// A file is a list of sections. A header line is a section keyword, optionally
// followed by arguments; entry lines below it are `name = expression` or, in
// chart sections, `even NAME [invertible]` / `odd NAME`. '#' starts a comment.
//
// .grp: group NAME, chart, coproduct, counit, antipode, [identity], [basis NAMES...]
//   coproduct images use the pair chart (second copy primed: t', tau').
// .bnd: base (chart entries), group NAME|PATH (or `group` followed by inline .grp
//   sections), [beta] with `BASIS = 1-form`, [gauge] with `GEN = element`.

#include "sgeom/bundle.hpp"
#include "sgeom/parse.hpp"

#include <filesystem>
#include <optional>

namespace sgeom {

// unreadable files, unknown groups
class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

GroupPtr parse_group_model(std::string_view text, const std::string &default_name);
// built-in group name or path to a .grp file
GroupPtr load_group(const std::string &name_or_path, const std::filesystem::path &dir = {});

struct BundleModel {
    std::string name;
    BundlePtr bundle;
    GForm beta;
    std::optional<AlgebraMorphism> gauge;
};

// group paths resolve against dir; throws BundleError when the bundle checks fail
BundleModel parse_bundle_model(std::string_view text, const std::string &name, const std::filesystem::path &dir,
                               std::uint64_t seed = 1);
BundleModel load_bundle(const std::string &path, std::uint64_t seed = 1);

std::string read_file(const std::filesystem::path &path);

} // namespace sgeom
