#pragma once

// Helpers shared by the unit suites and the acceptance binary: fixture
// paths, temporary directories, CLI invocation, seeded random generators
// and the hand-written inventory reader.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "idmap/idmap.hpp"

namespace testing_support {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& relative) {
  return fs::path(IDMAP_FIXTURES) / relative;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "idmap") {
    static int counter = 0;
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(++counter));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

/// Runs the idmap executable with NO_COLOR set; captures both streams.
inline CliResult run_cli(const std::vector<std::string>& args) {
  TempDir capture("idmap-cli");
  std::string cmd = "NO_COLOR=1 " + shell_quote(IDMAP_CLI);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " >" + shell_quote((capture / "out").string()) + " 2>" +
         shell_quote((capture / "err").string());
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text(capture / "out");
  r.err = read_text(capture / "err");
  return r;
}

/// Relative path -> contents for every regular file below `root`.
inline std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file())
      files[fs::relative(e.path(), root).generic_string()] = read_text(e.path());
  return files;
}

// -- hand-written inventories ------------------------------------------------

struct Inventory {
  idmap::IdentifierSet identifiers;
  std::set<idmap::InheritanceEdge> inheritance;
};

/// Lines are "<kind> <qualified name>" or "<extends|implements> <sub> <super>".
inline Inventory read_inventory(const fs::path& path) {
  Inventory inv;
  std::istringstream in(read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string tag, a, b;
    fields >> tag >> a >> b;
    if (tag == "extends" || tag == "implements") {
      inv.inheritance.insert({a, b,
                              tag == "extends" ? idmap::InheritanceKind::Extends
                                               : idmap::InheritanceKind::Implements});
    } else {
      auto kind = idmap::kind_from_tag(tag);
      if (!kind) throw std::runtime_error("bad inventory line: " + line);
      inv.identifiers.emplace(*kind, a);
    }
  }
  return inv;
}

// -- random generators -------------------------------------------------------

using Rng = std::mt19937;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

/// Context with 1..max_objects objects and 1..max_attributes attributes;
/// every attribute has at least one object (as in contexts built from
/// variants). Some objects may end up with an empty row.
inline idmap::FormalContext random_context(Rng& rng, std::size_t max_objects,
                                           std::size_t max_attributes,
                                           idmap::MapKind kind = idmap::MapKind::Classes) {
  const std::size_t g_count = pick(rng, 1, max_objects);
  const std::size_t m_count = pick(rng, 1, max_attributes);
  const double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
  std::vector<std::string> objects;
  for (std::size_t g = 0; g < g_count; ++g) objects.push_back("V" + std::to_string(g + 1));
  std::vector<idmap::Identifier> attributes;
  for (std::size_t m = 0; m < m_count; ++m)
    attributes.emplace_back(idmap::IdentifierKind::Class, "p.C" + std::to_string(m));
  std::sort(attributes.begin(), attributes.end());
  std::vector<idmap::Bits> rows(g_count, idmap::Bits(m_count));
  for (std::size_t m = 0; m < m_count; ++m) {
    bool any = false;
    for (std::size_t g = 0; g < g_count; ++g)
      if (coin(rng, density)) {
        rows[g].set(m);
        any = true;
      }
    if (!any) rows[pick(rng, 0, g_count - 1)].set(m);
  }
  return idmap::FormalContext(kind, objects, attributes, rows);
}

inline std::string random_word(Rng& rng, bool upper) {
  static const std::vector<std::string> stems = {
      "shape", "line", "panel", "media", "album", "photo", "util", "core",
      "draw",  "color", "x1",   "count", "name",  "item",  "node",  "tree",
      "list",  "map",  "value", "état", "größe", "data$", "io",   "ui"};
  std::string w = stems[pick(rng, 0, stems.size() - 1)];
  if (upper) {
    if (w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    else w = "C" + w;
  }
  if (coin(rng, 0.4)) w += std::to_string(pick(rng, 0, 9));
  return w;
}

/// A structurally valid code model: packages (including sometimes the
/// default package), nested classes, fields, overloaded methods and
/// inheritance edges of both kinds.
inline idmap::CodeModel random_model(Rng& rng, const std::string& name) {
  using idmap::IdentifierKind;
  idmap::CodeModel model;
  model.variant_name = name;
  std::vector<std::string> packages;
  const std::size_t n_packages = pick(rng, 0, 4);
  for (std::size_t i = 0; i < n_packages; ++i) {
    std::string pkg = random_word(rng, false);
    if (coin(rng, 0.5)) pkg += "." + random_word(rng, false);
    packages.push_back(pkg);
  }
  if (coin(rng, 0.2)) packages.push_back(std::string(idmap::kDefaultPackage));
  std::vector<std::string> classes;
  for (const auto& pkg : packages) {
    model.identifiers.emplace(IdentifierKind::Package, pkg);
    const std::size_t n_classes = pick(rng, 0, 4);
    for (std::size_t c = 0; c < n_classes; ++c) {
      std::string cls = pkg + "." + random_word(rng, true);
      classes.push_back(cls);
      if (coin(rng, 0.25)) classes.push_back(cls + "." + random_word(rng, true) + "In");
    }
  }
  static const std::vector<std::string> types = {"int", "String", "Color", "int[]",
                                                 "java.util.List", "T", "Object[]"};
  for (const auto& cls : classes) {
    model.identifiers.emplace(IdentifierKind::Class, cls);
    for (std::size_t a = pick(rng, 0, 3); a > 0; --a)
      model.identifiers.emplace(IdentifierKind::Attribute, cls + "." + random_word(rng, false));
    for (std::size_t m = pick(rng, 0, 4); m > 0; --m) {
      std::string sig = cls + "." + random_word(rng, false) + "(";
      for (std::size_t p = pick(rng, 0, 3), i = 0; i < p; ++i)
        sig += (i ? "," : "") + types[pick(rng, 0, types.size() - 1)];
      model.identifiers.emplace(IdentifierKind::Method, sig + ")");
    }
    if (coin(rng, 0.3))
      model.inheritance.insert({cls, random_word(rng, true), idmap::InheritanceKind::Extends});
    if (coin(rng, 0.3))
      model.inheritance.insert({cls, "java.io." + random_word(rng, true),
                                idmap::InheritanceKind::Implements});
  }
  idmap::refresh_stats(model);
  model.source_stats.loc = pick(rng, 0, 5000);
  idmap::validate(model);
  return model;
}

/// A second release derived from `base`: some classes dropped, some added,
/// some members changed.
inline idmap::CodeModel mutate_model(Rng& rng, const idmap::CodeModel& base,
                                     const std::string& name) {
  idmap::CodeModel next = random_model(rng, name);
  for (const auto& id : base.identifiers) {
    if (!coin(rng, 0.7)) continue;
    next.identifiers.insert(id);
    // Bring the owner chain along so the model stays valid.
    idmap::Identifier cur = id;
    while (cur.kind() != idmap::IdentifierKind::Package) {
      const auto owner = cur.owner();
      const bool owned_by_class =
          owner.find('.') != std::string::npos &&
          base.identifiers.contains(idmap::Identifier(idmap::IdentifierKind::Class, owner));
      cur = idmap::Identifier(owned_by_class ? idmap::IdentifierKind::Class
                                             : idmap::IdentifierKind::Package,
                              owner);
      next.identifiers.insert(cur);
    }
  }
  idmap::refresh_stats(next);
  idmap::validate(next);
  return next;
}

}  // namespace testing_support
