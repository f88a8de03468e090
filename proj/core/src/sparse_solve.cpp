#include "halfgasket/sparse_solve.hpp"

#include "halfgasket/errors.hpp"

namespace halfgasket {

template <Scalar S>
std::vector<S> SparseSystem<S>::solve(const std::vector<int>& order) const {
  const std::size_t n = rows_.size();
  if (order.size() != n) throw internal_error("elimination order has the wrong length");
  auto rows = rows_;
  auto rhs = rhs_;
  std::vector<char> done(n, 0);
  for (int p : order) {
    auto& rp = rows[static_cast<std::size_t>(p)];
    auto pit = rp.find(p);
    if (pit == rp.end() || is_zero(pit->second)) throw internal_error("zero pivot in sparse elimination");
    const S piv = pit->second;
    for (const auto& [r, unused] : rp) {
      if (r == p || done[static_cast<std::size_t>(r)]) continue;
      auto& rr = rows[static_cast<std::size_t>(r)];
      auto it = rr.find(p);
      if (it == rr.end()) continue;
      const S factor = it->second / piv;
      rr.erase(it);
      for (const auto& [c, v] : rp) {
        if (c == p) continue;
        auto [slot, inserted] = rr.try_emplace(c, S(0));
        slot->second -= factor * v;
      }
      rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(p)];
    }
    done[static_cast<std::size_t>(p)] = 1;
  }
  std::vector<S> x(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int p = *it;
    const auto& rp = rows[static_cast<std::size_t>(p)];
    S acc = rhs[static_cast<std::size_t>(p)];
    for (const auto& [c, v] : rp)
      if (c != p) acc -= v * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(p)] = acc / rp.at(p);
  }
  return x;
}

template class SparseSystem<Rational>;
template class SparseSystem<double>;

}  // namespace halfgasket
