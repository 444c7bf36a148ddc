#include "eulersum/identity_table.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "eulersum/errors.hpp"
#include "eulersum/json_io.hpp"
#include "eulersum/numerics.hpp"

namespace eulersum {

const LinComb* IdentityTable::find(const MzvAtom& atom) const {
  auto it = entries.find(atom);
  return it == entries.end() ? nullptr : &it->second;
}

void IdentityTable::insert(const MzvAtom& lhs, LinComb rhs) {
  if (!rhs.empty()) {
    auto w = rhs.homogeneous_weight();
    if (!w) throw TableError("right side of " + render_plain(lhs) + " mixes weights");
    if (*w != lhs.weight())
      throw TableError("right side of " + render_plain(lhs) + " has weight " + std::to_string(*w) + ", expected " +
                       std::to_string(lhs.weight()));
  }
  for (const auto& a : atoms_of(rhs))
    if (a == lhs) throw TableError("entry " + render_plain(lhs) + " refers to itself");
  max_weight = std::max(max_weight, lhs.weight());
  entries.insert_or_assign(lhs, std::move(rhs));
}

TableLoadResult load_identity_table(std::istream& in, const TableLoadOptions& opts) {
  TableLoadResult res;
  res.table.source = opts.source;
  Evaluator ev;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string lhs_text;
    try {
      auto j = nlohmann::json::parse(line);
      if (!j.is_object() || !j.contains("lhs") || !j["lhs"].is_string() || !j.contains("rhs"))
        throw TableError("entry needs \"lhs\" and \"rhs\"");
      lhs_text = j["lhs"].get<std::string>();
      MzvAtom lhs = parse_atom(lhs_text);
      LinComb rhs = lincomb_from_json(j["rhs"]);
      if (j.contains("weight") && (!j["weight"].is_number_integer() || j["weight"].get<int>() != lhs.weight()))
        throw TableError("declared weight does not match " + lhs_text);
      if (opts.verify) {
        auto l = ev.atom(lhs, opts.tol / 10);
        auto r = ev.lincomb(rhs, opts.tol / 10);
        Real diff = abs(l.value - r.value);
        if (diff > l.tail_bound + r.tail_bound + Real(opts.tol))
          throw TableError("numeric mismatch " + format_real(diff, 6));
      }
      res.table.insert(lhs, std::move(rhs));
    } catch (const nlohmann::json::exception& e) {
      res.rejected.push_back({lineno, lhs_text, std::string("malformed JSON: ") + e.what()});
    } catch (const Error& e) {
      res.rejected.push_back({lineno, lhs_text, e.what()});
    }
  }
  return res;
}

TableLoadResult load_identity_table_file(const std::filesystem::path& path, TableLoadOptions opts) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open table " + path.string());
  if (opts.source.empty()) opts.source = path.filename().string();
  return load_identity_table(in, opts);
}

void write_identity_table(std::ostream& out, const IdentityTable& table) {
  for (const auto& [lhs, rhs] : table.entries) {
    nlohmann::json j = {{"lhs", render_plain(lhs)}, {"rhs", lincomb_to_json(rhs)}, {"weight", lhs.weight()}};
    out << j.dump() << '\n';
  }
}

}  // namespace eulersum
