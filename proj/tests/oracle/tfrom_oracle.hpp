#pragma once

// Straight-line interpreters of the offline and online TFROM procedures,
// written against plain vectors and kept free of the library's data types so
// they can serve as an independent reference. The only shared piece is the
// seeded rank-1 customer order, which is an input to the procedure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tfrom/random.hpp"

namespace oracle {

struct Problem {
  std::vector<std::vector<double>> v;  // customers x items
  std::vector<int> provider;           // raw provider label per item
  int k = 1;
  bool quality_weighted = false;
};

inline double w(int rank) { return 1.0 / std::log2(rank + 1.0); }

inline std::vector<int> original_list(const std::vector<double>& row) {
  std::vector<int> list;
  for (int i = 0; i < static_cast<int>(row.size()); ++i) {
    // insertion keeping (score desc, id asc)
    int pos = static_cast<int>(list.size());
    while (pos > 0 && row[list[pos - 1]] < row[i]) --pos;
    list.insert(list.begin() + pos, i);
  }
  return list;
}

inline std::vector<double> fair_exposure(const Problem& pb, double total) {
  int labels = 0;
  for (int p : pb.provider) labels = std::max(labels, p + 1);
  std::vector<double> column(pb.provider.size(), 1.0);
  if (pb.quality_weighted) {
    std::fill(column.begin(), column.end(), 0.0);
    for (const auto& row : pb.v)
      for (std::size_t i = 0; i < row.size(); ++i) column[i] += row[i];
  }
  std::vector<double> weight(labels, 0.0);
  for (std::size_t i = 0; i < column.size(); ++i) weight[pb.provider[i]] += column[i];
  double sum = 0.0;
  for (double x : weight) sum += x;
  std::vector<double> fair(labels);
  for (int p = 0; p < labels; ++p) fair[p] = total * weight[p] / sum;
  return fair;
}

inline double slot_sum(int k) {
  double s = 0.0;
  for (int r = 1; r <= k; ++r) s += w(r);
  return s;
}

inline double idcg(const std::vector<double>& row, const std::vector<int>& ori, int k) {
  double s = 0.0;
  for (int r = 1; r <= k; ++r) s += row[ori[r - 1]] * w(r);
  return s;
}

struct OfflineResult {
  std::vector<std::vector<int>> lists;
  std::vector<double> exposure;  // indexed by raw label
  std::vector<double> quality;
};

inline OfflineResult offline(const Problem& pb, std::uint64_t seed) {
  const int m = static_cast<int>(pb.v.size());
  const int k = pb.k;
  const double slack = 1e-12;

  const double e_total = static_cast<double>(m) * slot_sum(k);
  const std::vector<double> fair = fair_exposure(pb, e_total);

  std::vector<double> q(m, 0.0);
  std::vector<double> e(fair.size(), 0.0);
  std::vector<std::vector<int>> l(m, std::vector<int>(k, -1));
  std::vector<std::vector<int>> unrec(m);
  std::vector<double> ideal(m);
  for (int u = 0; u < m; ++u) {
    unrec[u] = original_list(pb.v[u]);
    ideal[u] = idcg(pb.v[u], unrec[u], k);
  }

  for (int rank = 1; rank <= k; ++rank) {
    std::vector<int> sorted_customer;
    if (rank == 1) {
      for (auto c : tfrom::seeded_permutation(m, seed)) sorted_customer.push_back(static_cast<int>(c));
    } else {
      for (int u = 0; u < m; ++u) {
        int pos = static_cast<int>(sorted_customer.size());
        while (pos > 0 && q[sorted_customer[pos - 1]] < q[u]) --pos;
        sorted_customer.insert(sorted_customer.begin() + pos, u);
      }
    }
    for (int u : sorted_customer) {
      for (std::size_t j = 0; j < unrec[u].size(); ++j) {
        const int i = unrec[u][j];
        const int p = pb.provider[i];
        if (e[p] + w(rank) <= fair[p] + slack) {
          l[u][rank - 1] = i;
          e[p] += w(rank);
          q[u] += pb.v[u][i] * w(rank) / ideal[u];
          unrec[u].erase(unrec[u].begin() + static_cast<long>(j));
          break;
        }
      }
    }
  }

  for (int rank = 1; rank <= k; ++rank) {
    for (int u = 0; u < m; ++u) {
      if (l[u][rank - 1] != -1) continue;
      int next = -1;
      std::size_t next_pos = 0;
      for (std::size_t j = 0; j < unrec[u].size(); ++j) {
        const int i = unrec[u][j];
        bool better = next == -1;
        if (!better) {
          const double ei = e[pb.provider[i]];
          const double en = e[pb.provider[next]];
          if (ei < en) better = true;
          else if (ei == en && pb.v[u][i] > pb.v[u][next]) better = true;
          else if (ei == en && pb.v[u][i] == pb.v[u][next] && i < next) better = true;
        }
        if (better) {
          next = i;
          next_pos = j;
        }
      }
      l[u][rank - 1] = next;
      e[pb.provider[next]] += w(rank);
      q[u] += pb.v[u][next] * w(rank) / ideal[u];
      unrec[u].erase(unrec[u].begin() + static_cast<long>(next_pos));
    }
  }
  return {l, e, q};
}

struct OnlineState {
  std::vector<double> e;  // indexed by raw label
  std::vector<double> q;
  std::vector<int> rec_time;
  int c_num = 0;
};

inline OnlineState fresh_state(const Problem& pb) {
  int labels = 0;
  for (int p : pb.provider) labels = std::max(labels, p + 1);
  return {std::vector<double>(labels, 0.0), std::vector<double>(pb.v.size(), 0.0),
          std::vector<int>(pb.v.size(), 0), 0};
}

inline std::vector<int> online(const Problem& pb, OnlineState& s, int u) {
  const int k = pb.k;
  const double slack = 1e-12;
  const double e_r = static_cast<double>(s.c_num + 1) * slot_sum(k);
  const std::vector<double> fair = fair_exposure(pb, e_r);

  std::vector<int> l(k, -1);
  std::vector<int> unrec = original_list(pb.v[u]);
  const double ideal = idcg(pb.v[u], unrec, k);
  double q_temp = 0.0;

  for (int rank = 1; rank <= k; ++rank) {
    for (std::size_t j = 0; j < unrec.size(); ++j) {
      const int i = unrec[j];
      const int p = pb.provider[i];
      if (s.e[p] + w(rank) <= fair[p] + slack) {
        l[rank - 1] = i;
        s.e[p] += w(rank);
        q_temp += pb.v[u][i] * w(rank) / ideal;
        unrec.erase(unrec.begin() + static_cast<long>(j));
        break;
      }
    }
  }
  for (int rank = 1; rank <= k; ++rank) {
    if (l[rank - 1] == -1) {
      const int next = unrec[0];
      l[rank - 1] = next;
      s.e[pb.provider[next]] += w(rank);
      q_temp += pb.v[u][next] * w(rank) / ideal;
      unrec.erase(unrec.begin());
    }
  }
  s.q[u] = (s.q[u] * s.rec_time[u] + q_temp) / (s.rec_time[u] + 1);
  s.rec_time[u] += 1;
  s.c_num += 1;
  return l;
}

}  // namespace oracle
