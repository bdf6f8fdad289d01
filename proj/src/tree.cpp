#include "gwve/tree.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gwve/errors.h"

namespace gwve {

int Genealogy::census(int m) const {
  if (m < 0) throw std::domain_error("generation index must be >= 0");
  if (m == 0) return 1;
  if (m > height()) return 0;
  return static_cast<int>(parents_[m - 1].size());
}

void Genealogy::push_generation(std::vector<std::uint32_t> parent_indices) {
  const int prev = census(height());
  std::uint32_t last = 0;
  for (std::uint32_t p : parent_indices) {
    if (p >= static_cast<std::uint32_t>(prev))
      throw std::invalid_argument("parent index out of range");
    if (p < last) throw std::invalid_argument("parent indices must be non-decreasing");
    last = p;
  }
  if (parent_indices.empty())
    throw std::invalid_argument("generations must be nonempty; extinction truncates the tree");
  parents_.push_back(std::move(parent_indices));
}

int Genealogy::parent_of(int gen, int idx) const {
  if (gen < 1 || gen > height() || idx < 0 || idx >= census(gen))
    throw std::domain_error("node out of range");
  return static_cast<int>(parents_[gen - 1][idx]);
}

int Genealogy::ancestor_of(int gen, int idx, int anc_gen) const {
  if (anc_gen > gen) throw std::domain_error("ancestor generation above node");
  int i = idx;
  for (int g = gen; g > anc_gen; --g) i = parent_of(g, i);
  return i;
}

std::pair<int, int> Genealogy::children_range(int gen, int idx) const {
  if (gen < 0 || gen > height() || idx < 0 || idx >= census(gen))
    throw std::domain_error("node out of range");
  if (gen == height()) return {0, 0};
  const auto& par = parents_[gen];
  const auto lo = std::lower_bound(par.begin(), par.end(), static_cast<std::uint32_t>(idx));
  const auto hi = std::upper_bound(par.begin(), par.end(), static_cast<std::uint32_t>(idx));
  return {static_cast<int>(lo - par.begin()), static_cast<int>(hi - par.begin())};
}

int Genealogy::children_count(int gen, int idx) const {
  const auto [lo, hi] = children_range(gen, idx);
  return hi - lo;
}

std::pair<int, int> Genealogy::descendants_range(int gen, int idx, int desc_gen) const {
  if (desc_gen < gen) throw std::domain_error("descendant generation above node");
  int lo = idx, hi = idx + 1;
  for (int g = gen; g < desc_gen; ++g) {
    if (g >= height() || lo == hi) return {0, 0};
    const auto& par = parents_[g];
    lo = static_cast<int>(std::lower_bound(par.begin(), par.end(), static_cast<std::uint32_t>(lo)) -
                          par.begin());
    hi = static_cast<int>(std::lower_bound(par.begin(), par.end(), static_cast<std::uint32_t>(hi)) -
                          par.begin());
  }
  return {lo, hi};
}

int Genealogy::node_index(const Label& u) const {
  int gen = 0, idx = 0;
  for (int child : u) {
    if (child < 1 || gen >= height()) return -1;
    const auto [lo, hi] = children_range(gen, idx);
    if (child > hi - lo) return -1;
    idx = lo + child - 1;
    ++gen;
  }
  return idx;
}

Label Genealogy::label_of(int gen, int idx) const {
  Label u(gen);
  int i = idx;
  for (int g = gen; g >= 1; --g) {
    const int p = parent_of(g, i);
    const auto [lo, hi] = children_range(g - 1, p);
    (void)hi;
    u[g - 1] = i - lo + 1;
    i = p;
  }
  return u;
}

Genealogy Genealogy::restricted(int m) const {
  if (m < 0 || m > height()) throw std::domain_error("restriction height out of range");
  Genealogy r;
  for (int g = 1; g <= m; ++g) r.parents_.push_back(parents_[g - 1]);
  return r;
}

std::optional<Genealogy> Genealogy::subtree(const Label& u) const {
  const int idx = node_index(u);
  if (idx < 0) return std::nullopt;
  const int base_gen = static_cast<int>(u.size());
  Genealogy s;
  int lo = idx, hi = idx + 1;
  for (int g = base_gen; g < height(); ++g) {
    const auto& par = parents_[g];
    const int clo = static_cast<int>(
        std::lower_bound(par.begin(), par.end(), static_cast<std::uint32_t>(lo)) - par.begin());
    const int chi = static_cast<int>(
        std::lower_bound(par.begin(), par.end(), static_cast<std::uint32_t>(hi)) - par.begin());
    if (clo == chi) break;
    std::vector<std::uint32_t> rebased(chi - clo);
    for (int i = clo; i < chi; ++i) rebased[i - clo] = par[i] - lo;
    s.parents_.push_back(std::move(rebased));
    lo = clo;
    hi = chi;
  }
  return s;
}

std::vector<Label> Genealogy::labels() const {
  std::vector<Label> out;
  std::vector<Label> cur = {Label{}};
  out.push_back(Label{});
  for (int g = 0; g < height(); ++g) {
    std::vector<Label> next(census(g + 1));
    const auto& par = parents_[g];
    int child_no = 0;
    for (std::size_t i = 0; i < par.size(); ++i) {
      child_no = (i > 0 && par[i] == par[i - 1]) ? child_no + 1 : 1;
      Label l = cur[par[i]];
      l.push_back(child_no);
      next[i] = std::move(l);
    }
    for (const auto& l : next) out.push_back(l);
    cur = std::move(next);
  }
  return out;
}

Genealogy Genealogy::from_labels(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end(), [](const Label& a, const Label& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty() || !labels.front().empty())
    throw std::invalid_argument("label set must contain the root");

  Genealogy t;
  std::size_t gen_start = 0, gen_end = 1;  // the root
  while (gen_end < labels.size()) {
    const std::size_t next_start = gen_end;
    const std::size_t gen = labels[next_start].size();
    std::size_t next_end = next_start;
    while (next_end < labels.size() && labels[next_end].size() == gen) ++next_end;
    if (gen != labels[gen_start].size() + 1)
      throw std::invalid_argument("label set is not ancestor-closed");

    std::vector<std::uint32_t> par(next_end - next_start);
    for (std::size_t i = next_start; i < next_end; ++i) {
      Label p = labels[i];
      const int child_no = p.back();
      p.pop_back();
      const auto it = std::lower_bound(labels.begin() + gen_start, labels.begin() + next_start, p,
                                       [](const Label& a, const Label& b) { return a < b; });
      if (it == labels.begin() + next_start || *it != p)
        throw std::invalid_argument("label set is not ancestor-closed");
      par[i - next_start] = static_cast<std::uint32_t>(it - (labels.begin() + gen_start));
      // children numbered 1..l_u: the previous sibling must exist
      if (child_no > 1) {
        Label sib = labels[i];
        sib.back() -= 1;
        if (!std::binary_search(labels.begin() + next_start, labels.begin() + next_end, sib))
          throw std::invalid_argument("children must be numbered 1..l_u without gaps");
      }
    }
    t.parents_.push_back(std::move(par));
    gen_start = next_start;
    gen_end = next_end;
  }
  return t;
}

std::string Genealogy::serialize() const {
  std::ostringstream os;
  os << height() << '\n';
  for (int g = 1; g <= height(); ++g) {
    const auto& par = parents_[g - 1];
    for (std::size_t i = 0; i < par.size(); ++i) {
      if (i) os << ' ';
      os << par[i];
    }
    os << '\n';
  }
  return os.str();
}

Genealogy concat(const Genealogy& t, const Label& u, const Genealogy& s) {
  const int u_idx = t.node_index(u);
  if (u_idx < 0) return t;
  const int u_gen = static_cast<int>(u.size());
  const int shift = t.children_count(u_gen, u_idx);
  auto labels = t.labels();
  for (auto& w : s.labels()) {
    if (w.empty()) continue;
    Label v = u;
    v.push_back(shift + w[0]);
    v.insert(v.end(), w.begin() + 1, w.end());
    labels.push_back(std::move(v));
  }
  return Genealogy::from_labels(std::move(labels));
}

SpinedTree::SpinedTree(Genealogy tree, std::vector<Spine> spines)
    : tree_(std::move(tree)), spines_(std::move(spines)) {
  for (const auto& sp : spines_) {
    if (sp.end_gen < 0 || sp.end_gen > tree_.height() || sp.end_index < 0 ||
        sp.end_index >= tree_.census(sp.end_gen))
      throw std::invalid_argument("spine endpoint out of range");
  }
}

int SpinedTree::marks_at(int gen, int idx) const {
  int count = 0;
  for (const auto& sp : spines_) {
    if (sp.end_gen < gen) continue;
    if (tree_.ancestor_of(sp.end_gen, sp.end_index, gen) == idx) ++count;
  }
  return count;
}

int SpinedTree::marks(const Label& u) const {
  const int idx = tree_.node_index(u);
  if (idx < 0) throw std::domain_error("marks: node is not in the tree");
  return marks_at(static_cast<int>(u.size()), idx);
}

std::vector<int> SpinedTree::marked_count_by_generation() const {
  const int h = tree_.height();
  std::vector<int> count(h + 1, 0);
  std::vector<std::vector<int>> at(h + 1);
  for (const auto& sp : spines_) {
    int i = sp.end_index;
    for (int g = sp.end_gen; g >= 0; --g) {
      at[g].push_back(i);
      if (g > 0) i = tree_.parent_of(g, i);
    }
  }
  for (int g = 0; g <= h; ++g) {
    auto& v = at[g];
    std::sort(v.begin(), v.end());
    count[g] = static_cast<int>(std::unique(v.begin(), v.end()) - v.begin());
  }
  return count;
}

bool SpinedTree::all_spines_distinct_at(int n) const {
  if (tree_.height() != n) return false;
  std::vector<int> ends;
  for (const auto& sp : spines_) {
    if (sp.end_gen != n) return false;
    ends.push_back(sp.end_index);
  }
  std::sort(ends.begin(), ends.end());
  return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

SpinedTree SpinedTree::restricted(int m) const {
  Genealogy r = tree_.restricted(m);
  std::vector<Spine> sp = spines_;
  for (auto& s : sp) {
    if (s.end_gen > m) {
      s.end_index = tree_.ancestor_of(s.end_gen, s.end_index, m);
      s.end_gen = m;
    }
  }
  return SpinedTree(std::move(r), std::move(sp));
}

std::optional<SpinedTree> SpinedTree::subtree(const Label& u) const {
  const int idx = tree_.node_index(u);
  if (idx < 0) return std::nullopt;
  const int gen = static_cast<int>(u.size());
  auto sub = tree_.subtree(u);
  std::vector<Spine> kept;
  for (const auto& sp : spines_) {
    if (sp.end_gen < gen) continue;
    if (tree_.ancestor_of(sp.end_gen, sp.end_index, gen) != idx) continue;
    const auto [lo, hi] = tree_.descendants_range(gen, idx, sp.end_gen);
    (void)hi;
    kept.push_back(Spine{sp.end_gen - gen, sp.end_index - lo});
  }
  return SpinedTree(std::move(*sub), std::move(kept));
}

std::string SpinedTree::serialize() const {
  std::ostringstream os;
  os << tree_.serialize() << '|';
  for (const auto& sp : spines_) {
    os << ' ';
    if (sp.end_gen == tree_.height())
      os << sp.end_index;
    else
      os << 'd' << sp.end_gen << ':' << sp.end_index;
  }
  os << '\n';
  return os.str();
}

SpinedTree concat(const SpinedTree& t, const Label& u, const SpinedTree& s) {
  const int u_idx = t.tree().node_index(u);
  if (u_idx < 0) return t;
  const int u_gen = static_cast<int>(u.size());
  const int u_children = t.tree().children_count(u_gen, u_idx);
  const int u_marks = t.marks(u);

  if (u_children > 0) {
    if (u_marks > 0)
      throw InvalidConcatenationError(
          "spined concatenation is only defined at a leaf of the carrying spine lines");
    // Unmarked internal node: plain concatenation, spines untouched.
    Genealogy merged = concat(t.tree(), u, s.tree());
    std::vector<Spine> spines;
    for (const auto& sp : t.spines()) {
      const Label end = t.tree().label_of(sp.end_gen, sp.end_index);
      const int idx = merged.node_index(end);
      spines.push_back(Spine{sp.end_gen, idx});
    }
    return SpinedTree(std::move(merged), std::move(spines));
  }

  if (u_marks != s.k())
    throw InvalidConcatenationError("mark count at the attachment leaf must match the spine count");

  Genealogy merged = concat(t.tree(), u, s.tree());
  std::vector<Spine> spines;
  int attach_rank = 0;  // pairs the j-th mark at u with the j-th spine of s
  for (const auto& sp : t.spines()) {
    const bool through_u = sp.end_gen >= u_gen && sp.end_gen == u_gen && sp.end_index == u_idx;
    if (!through_u) {
      const Label end = t.tree().label_of(sp.end_gen, sp.end_index);
      spines.push_back(Spine{sp.end_gen, merged.node_index(end)});
      continue;
    }
    const auto& w = s.spines()[attach_rank++];
    const Label w_end = s.tree().label_of(w.end_gen, w.end_index);
    Label end = u;  // u is a leaf: attached labels are u . w
    end.insert(end.end(), w_end.begin(), w_end.end());
    spines.push_back(Spine{u_gen + w.end_gen, merged.node_index(end)});
  }
  return SpinedTree(std::move(merged), std::move(spines));
}

}  // namespace gwve
