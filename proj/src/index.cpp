#include "eulersum/index.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "eulersum/errors.hpp"

namespace eulersum {

int EulerSumIndex::weight() const noexcept {
  int w = std::abs(outer);
  for (int i : inner) w += std::abs(i);
  return w;
}

bool EulerSumIndex::alternating() const noexcept {
  return outer < 0 || std::any_of(inner.begin(), inner.end(), [](int i) { return i < 0; });
}

int index_weight(const EulerSumIndex& idx) { return idx.weight(); }
int index_degree(const EulerSumIndex& idx) { return idx.degree(); }

EulerSumIndex make_index(std::vector<int> inner, int outer) {
  for (int i : inner)
    if (i == 0) throw ParseError("zero exponent", 0);
  if (outer == 0) throw ParseError("zero outer exponent", 0);
  if (outer == 1) throw DivergenceError("outer exponent 1 makes the sum diverge");
  std::sort(inner.begin(), inner.end(), [](int a, int b) {
    if ((a < 0) != (b < 0)) return a > 0;
    return std::abs(a) < std::abs(b);
  });
  return EulerSumIndex{std::move(inner), outer};
}

void validate_index(const EulerSumIndex& idx) {
  EulerSumIndex canonical = make_index(idx.inner, idx.outer);
  if (!(canonical == idx)) throw PreconditionError("index inner list is not in canonical order");
}

EulerSumIndex parse_index(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  bool wrapped = false;
  if (pos < text.size() && text[pos] == 'S') {
    ++pos;
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    wrapped = true;
  }
  std::vector<int> entries;
  std::vector<std::size_t> where;
  while (true) {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && text[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected integer", pos);
    if (text[pos] == '0') throw ParseError("zero or leading-zero entry", pos);
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000) throw ParseError("exponent too large", start);
      ++pos;
    }
    entries.push_back(static_cast<int>(neg ? -v : v));
    where.push_back(start);
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  if (wrapped) {
    if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
    ++pos;
    skip_ws();
  }
  if (pos != text.size()) throw ParseError("trailing input", pos);
  int outer = entries.back();
  entries.pop_back();
  return make_index(std::move(entries), outer);
}

namespace {

std::string latex_entry(int e) {
  return e < 0 ? "\\bar{" + std::to_string(-e) + "}" : std::to_string(e);
}

}  // namespace

std::string render_index(const EulerSumIndex& idx, RenderStyle style) {
  switch (style) {
    case RenderStyle::Plain: {
      std::string s = "S(";
      for (int i : idx.inner) s += std::to_string(i) + ",";
      return s + std::to_string(idx.outer) + ")";
    }
    case RenderStyle::Latex: {
      std::string s = "S_{";
      for (std::size_t i = 0; i < idx.inner.size();) {
        std::size_t j = i;
        while (j < idx.inner.size() && idx.inner[j] == idx.inner[i]) ++j;
        s += latex_entry(idx.inner[i]);
        if (j - i > 1) s += "^" + (j - i < 10 ? std::to_string(j - i)
                                               : "{" + std::to_string(j - i) + "}");
        i = j;
      }
      if (!idx.inner.empty()) s += ",";
      return s + latex_entry(idx.outer) + "}";
    }
    case RenderStyle::Json: {
      std::string s = "{\"inner\":[";
      for (std::size_t i = 0; i < idx.inner.size(); ++i)
        s += (i ? "," : "") + std::to_string(idx.inner[i]);
      return s + "],\"outer\":" + std::to_string(idx.outer) + "}";
    }
  }
  return {};
}

}  // namespace eulersum
