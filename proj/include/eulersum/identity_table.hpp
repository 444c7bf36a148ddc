#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "eulersum/lincomb.hpp"

namespace eulersum {

/// User-supplied substitutions atom -> LinComb. Never trusted blindly: every
/// entry is weight-checked on insert and can be checked numerically on load.
struct IdentityTable {
  std::string source;
  int max_weight = 0;
  std::map<MzvAtom, LinComb> entries;

  const LinComb* find(const MzvAtom& atom) const;
  /// Throws TableError on a weight mismatch or an entry mentioning itself.
  void insert(const MzvAtom& lhs, LinComb rhs);
};

struct TableLoadOptions {
  std::string source;
  bool verify = false;
  double tol = 1e-8;
};

struct TableRejection {
  std::size_t line = 0;
  std::string lhs;
  std::string reason;
};

struct TableLoadResult {
  IdentityTable table;
  std::vector<TableRejection> rejected;
};

/// JSON lines: {"lhs": "z(2,1)", "rhs": [{"factors": ["z(3)"], "coeff": "1"}], "weight": 3}.
/// Bad lines are rejected one by one; blank lines are skipped.
TableLoadResult load_identity_table(std::istream& in, const TableLoadOptions& opts = {});
/// Throws TableError when the file cannot be opened.
TableLoadResult load_identity_table_file(const std::filesystem::path& path, TableLoadOptions opts = {});

void write_identity_table(std::ostream& out, const IdentityTable& table);

}  // namespace eulersum
