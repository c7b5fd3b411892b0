#include "lazydec/blossom.h"

#include <algorithm>
#include <stdexcept>

// Edges are addressed by endpoint ids: endpoint p belongs to edge p / 2, and p ^ 1 is the other
// end. Blossoms take ids [n, 2n). Labels: 0 free, 1 outer (S), 2 inner (T); bit 4 marks
// blossoms visited by scan_blossom.

namespace lazydec {

namespace {

class Matcher {
 public:
  Matcher(int n, std::span<const WeightedEdge> edges, bool max_cardinality)
      : n_(n), edges_(edges.begin(), edges.end()), max_cardinality_(max_cardinality) {}

  std::vector<int> run();

 private:
  std::int64_t slack(int k) const {
    const WeightedEdge& e = edges_[static_cast<std::size_t>(k)];
    return dual_[static_cast<std::size_t>(e.u)] + dual_[static_cast<std::size_t>(e.v)] - 2 * e.weight;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[b]) leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  static int wrap(int j, std::size_t size) {
    const int s = static_cast<int>(size);
    return ((j % s) + s) % s;
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int n_;
  std::vector<WeightedEdge> edges_;
  bool max_cardinality_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> childs_;
  std::vector<int> base_;
  std::vector<std::vector<int>> endps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> best_edges_;
  std::vector<bool> has_best_edges_;
  std::vector<int> unused_;
  std::vector<std::int64_t> dual_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

void Matcher::assign_label(int w, int t, int p) {
  const int b = inblossom_[w];
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    const int base = base_[b];
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

int Matcher::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void Matcher::add_blossom(int base, int k) {
  int v = edges_[k].u;
  int w = edges_[k].v;
  const int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  const int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  std::vector<int>& path = childs_[b];
  std::vector<int>& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = 0;
  for (int leaf : leaves(b)) {
    if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
    inblossom_[leaf] = b;
  }

  std::vector<int> bestedgeto(static_cast<std::size_t>(2 * n_), -1);
  for (int sub : path) {
    std::vector<int> candidates;
    if (!has_best_edges_[sub]) {
      for (int leaf : leaves(sub)) {
        for (int p : neighbend_[leaf]) candidates.push_back(p / 2);
      }
    } else {
      candidates = best_edges_[sub];
    }
    for (int kk : candidates) {
      int i = edges_[kk].u;
      int j = edges_[kk].v;
      if (inblossom_[j] == b) std::swap(i, j);
      const int bj = inblossom_[j];
      if (bj != b && label_[bj] == 1 &&
          (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
        bestedgeto[bj] = kk;
      }
    }
    best_edges_[sub].clear();
    has_best_edges_[sub] = false;
    bestedge_[sub] = -1;
  }
  best_edges_[b].clear();
  for (int kk : bestedgeto) {
    if (kk != -1) best_edges_[b].push_back(kk);
  }
  has_best_edges_[b] = true;
  bestedge_[b] = -1;
  for (int kk : best_edges_[b]) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }
}

void Matcher::expand_blossom(int b, bool endstage) {
  for (int s : childs_[b]) {
    parent_[s] = -1;
    if (s < n_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (int leaf : leaves(s)) inblossom_[leaf] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    const auto& ch = childs_[b];
    const auto& ep = endps_[b];
    const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
    int jstep, endptrick;
    if (j & 1) {
      j -= static_cast<int>(ch.size());
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[ep[wrap(j - endptrick, ep.size())] ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allowedge_[ep[wrap(j - endptrick, ep.size())] / 2] = 1;
      j += jstep;
      p = ep[wrap(j - endptrick, ep.size())] ^ endptrick;
      allowedge_[p / 2] = 1;
      j += jstep;
    }
    int bv = ch[wrap(j, ch.size())];
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (ch[wrap(j, ch.size())] != entrychild) {
      bv = ch[wrap(j, ch.size())];
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int v = -1;
      for (int leaf : leaves(bv)) {
        v = leaf;
        if (label_[leaf] != 0) break;
      }
      if (label_[v] != 0) {
        label_[v] = 0;
        label_[endpoint_[mate_[base_[bv]]]] = 0;
        assign_label(v, 2, labelend_[v]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  best_edges_[b].clear();
  has_best_edges_[b] = false;
  bestedge_[b] = -1;
  unused_.push_back(b);
}

void Matcher::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= n_) augment_blossom(t, v);
  auto& ch = childs_[b];
  auto& ep = endps_[b];
  const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
  int j = i;
  int jstep, endptrick;
  if (i & 1) {
    j -= static_cast<int>(ch.size());
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = ch[wrap(j, ch.size())];
    const int p = ep[wrap(j - endptrick, ep.size())] ^ endptrick;
    if (t >= n_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = ch[wrap(j, ch.size())];
    if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch[0]];
}

void Matcher::augment_matching(int k) {
  const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
  for (const auto& start : ends) {
    int s = start[0];
    int p = start[1];
    while (true) {
      const int bs = inblossom_[s];
      if (bs >= n_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      const int t = endpoint_[labelend_[bs]];
      const int bt = inblossom_[t];
      s = endpoint_[labelend_[bt]];
      const int j = endpoint_[labelend_[bt] ^ 1];
      if (bt >= n_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<int> Matcher::run() {
  const int n = n_;
  const int nedge = static_cast<int>(edges_.size());
  if (n == 0 || nedge == 0) return std::vector<int>(static_cast<std::size_t>(n), -1);
  std::int64_t maxweight = 0;
  for (const auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("invalid matching edge");
    }
    maxweight = std::max(maxweight, e.weight);
  }
  const auto n2 = static_cast<std::size_t>(2 * n);
  endpoint_.resize(static_cast<std::size_t>(2 * nedge));
  for (int p = 0; p < 2 * nedge; ++p) endpoint_[p] = p % 2 == 0 ? edges_[p / 2].u : edges_[p / 2].v;
  neighbend_.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k < nedge; ++k) {
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  mate_.assign(static_cast<std::size_t>(n), -1);
  label_.assign(n2, 0);
  labelend_.assign(n2, -1);
  inblossom_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inblossom_[i] = i;
  parent_.assign(n2, -1);
  childs_.assign(n2, {});
  base_.assign(n2, -1);
  for (int i = 0; i < n; ++i) base_[i] = i;
  endps_.assign(n2, {});
  bestedge_.assign(n2, -1);
  best_edges_.assign(n2, {});
  has_best_edges_.assign(n2, false);
  unused_.clear();
  for (int b = n; b < 2 * n; ++b) unused_.push_back(b);
  dual_.assign(n2, 0);
  for (int i = 0; i < n; ++i) dual_[i] = maxweight;
  allowedge_.assign(static_cast<std::size_t>(nedge), 0);

  for (int stage = 0; stage < n; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n; b < 2 * n; ++b) {
      best_edges_[b].clear();
      has_best_edges_[b] = false;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), 0);
    queue_.clear();
    for (int v = 0; v < n; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    }
    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[v]) {
          const int k = p / 2;
          const int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          std::int64_t kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = 1;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = -1;
      std::int64_t delta = 0;
      int deltaedge = -1;
      int deltablossom = -1;
      if (!max_cardinality_) {
        deltatype = 1;
        delta = *std::min_element(dual_.begin(), dual_.begin() + n);
      }
      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          const std::int64_t d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          const std::int64_t d = slack(bestedge_[b]) / 2;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 && (deltatype == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        deltatype = 1;
        delta = std::max<std::int64_t>(0, *std::min_element(dual_.begin(), dual_.begin() + n));
      }

      for (int v = 0; v < n; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dual_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = n; b < 2 * n; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }

      if (deltatype == 1) break;
      if (deltatype == 2) {
        allowedge_[deltaedge] = 1;
        int i = edges_[deltaedge].u;
        if (label_[inblossom_[i]] == 0) i = edges_[deltaedge].v;
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = 1;
        queue_.push_back(edges_[deltaedge].u);
      } else if (deltatype == 4) {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;
    for (int b = n; b < 2 * n; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) expand_blossom(b, true);
    }
  }

  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (mate_[v] >= 0) out[v] = endpoint_[mate_[v]];
  }
  return out;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices, std::span<const WeightedEdge> edges,
                                     bool max_cardinality) {
  Matcher m(num_vertices, edges, max_cardinality);
  return m.run();
}

}  // namespace lazydec
