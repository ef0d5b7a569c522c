#include "strongmark/marker_set.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace strongmark {

namespace {

template <int N>
void sort_fixed(std::vector<Coord>& coords) {
  const std::size_t count = coords.size() / N;
  std::vector<std::array<Coord, N>> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    for (int j = 0; j < N; ++j) pts[k][j] = coords[k * N + j];
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  coords.resize(pts.size() * N);
  for (std::size_t k = 0; k < pts.size(); ++k)
    for (int j = 0; j < N; ++j) coords[k * N + j] = pts[k][j];
}

void sort_generic(std::vector<Coord>& coords, int n) {
  const std::size_t count = coords.size() / n;
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(coords.begin() + a * n, coords.begin() + (a + 1) * n, coords.begin() + b * n,
                                        coords.begin() + (b + 1) * n);
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<Coord> out;
  out.reserve(coords.size());
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = idx[k];
    if (k > 0 && std::equal(coords.begin() + i * n, coords.begin() + (i + 1) * n, out.end() - n)) continue;
    out.insert(out.end(), coords.begin() + i * n, coords.begin() + (i + 1) * n);
  }
  coords = std::move(out);
}

}  // namespace

void MarkerSet::add(std::span<const Coord> x) {
  if (static_cast<int>(x.size()) != dim_) throw Error(ErrorCode::DimensionMismatch, "marker of wrong dimension");
  coords_.insert(coords_.end(), x.begin(), x.end());
}

void MarkerSet::append(const MarkerSet& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "appending marker set of other dimension");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

void MarkerSet::normalize() {
  switch (dim_) {
    case 0: return;
    case 1: sort_fixed<1>(coords_); break;
    case 2: sort_fixed<2>(coords_); break;
    case 3: sort_fixed<3>(coords_); break;
    case 4: sort_fixed<4>(coords_); break;
    default: sort_generic(coords_, dim_);
  }
}

bool MarkerSet::is_normalized() const {
  for (std::size_t k = 1; k < size(); ++k) {
    auto a = (*this)[k - 1];
    auto b = (*this)[k];
    if (!std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

bool MarkerSet::contains(std::span<const Coord> x) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto p = (*this)[mid];
    if (std::lexicographical_compare(p.begin(), p.end(), x.begin(), x.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(x.begin(), x.end(), (*this)[lo].begin());
}

}  // namespace strongmark
