#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "awfs/error.hpp"

namespace oracle {

using awfs::DeltaComplexBuilder;

namespace {

struct Simplex {
  int dim;
  std::string id;
  std::vector<std::string> faces;
};

std::vector<Simplex> simplices_of(const DeltaComplex& x) {
  std::vector<Simplex> out;
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < x.size(k); ++i) out.push_back({k, x.id(k, i), x.face_ids(k, i)});
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> ids_of(const SimplicialMap& f) {
  std::map<std::string, std::string> out;
  for (const auto& s : simplices_of(f.dom())) out[s.id] = f.image(s.id);
  return out;
}

std::vector<std::map<std::string, std::string>> all_maps(const DeltaComplex& dom, const DeltaComplex& cod) {
  const auto source = simplices_of(dom);
  const auto target = simplices_of(cod);
  std::vector<std::map<std::string, std::string>> out;
  std::map<std::string, std::string> current;
  std::function<void(std::size_t)> extend = [&](std::size_t pos) {
    if (pos == source.size()) {
      out.push_back(current);
      return;
    }
    const auto& s = source[pos];
    for (const auto& t : target) {
      if (t.dim != s.dim) continue;
      bool ok = true;
      for (std::size_t j = 0; j < s.faces.size(); ++j) ok = ok && current.at(s.faces[j]) == t.faces[j];
      if (!ok) continue;
      current[s.id] = t.id;
      extend(pos + 1);
      current.erase(s.id);
    }
  };
  extend(0);
  return out;
}

std::vector<std::string> image_ids(const SimplicialMap& u) {
  std::set<std::string> out;
  for (const auto& s : simplices_of(u.dom())) out.insert(u.image(s.id));
  return {out.begin(), out.end()};
}

FreeStages free_stages(const SimplicialMap& f, int max_stages) {
  const auto& b = f.cod();
  DeltaComplexBuilder builder(f.dom());
  DeltaComplex x = f.dom();
  auto ef = ids_of(f);
  std::optional<std::set<std::string>> previous;
  FreeStages out;
  for (int n = 0; n < max_stages; ++n) {
    std::vector<Simplex> glued;
    std::vector<std::string> targets;
    for (int k = 0; k <= b.max_dim(); ++k) {
      const auto shape = awfs::boundary_complex(k);
      for (std::uint32_t t = 0; t < b.size(k); ++t) {
        const auto want = b.face_ids(k, t);
        for (const auto& u : all_maps(shape, x)) {
          std::vector<std::string> facets;
          bool ok = true;
          for (int i = 0; i <= k && k > 0; ++i) {
            const auto& img = u.at(awfs::facet_name(k, i));
            ok = ok && ef.at(img) == want[static_cast<std::size_t>(i)];
            facets.push_back(img);
          }
          if (!ok) continue;
          if (previous) {
            bool inside = true;
            for (const auto& [from, to] : u) inside = inside && previous->count(to) > 0;
            if (inside) continue;
          }
          glued.push_back({k, "#" + std::to_string(n) + "." + std::to_string(glued.size()), facets});
          targets.push_back(b.id(k, t));
        }
      }
    }
    if (glued.empty()) break;
    std::multiset<int> dims;
    previous.emplace();
    for (const auto& s : simplices_of(x)) previous->insert(s.id);
    for (std::size_t i = 0; i < glued.size(); ++i) {
      dims.insert(glued[i].dim);
      builder.add(glued[i].dim, glued[i].id, glued[i].faces);
      ef[glued[i].id] = targets[i];
    }
    out.cell_dims.push_back(std::move(dims));
    x = builder.build();
  }
  for (int k = 0; k <= x.max_dim(); ++k) out.body_sizes.push_back(x.size(k));
  out.body = x;
  out.ef = std::move(ef);
  return out;
}

Colimit colimit(const std::vector<DeltaComplex>& objects, const std::vector<Arrow>& arrows,
                std::optional<std::size_t> preferred) {
  auto tag = [](std::size_t o, const std::string& id) { return std::to_string(o) + ":" + id; };
  std::map<std::string, std::string> label;  // tagged id -> least tagged id seen in its class
  for (std::size_t o = 0; o < objects.size(); ++o) {
    for (const auto& s : simplices_of(objects[o])) label[tag(o, s.id)] = tag(o, s.id);
  }
  // Every class points, possibly through a chain, at its least member.
  auto root = [&](std::string node) {
    while (label.at(node) != node) node = label.at(node);
    return node;
  };
  for (const auto& a : arrows) {
    for (const auto& s : simplices_of(a.map.dom())) {
      auto l = root(tag(a.src, s.id));
      auto r = root(tag(a.dst, a.map.image(s.id)));
      if (l == r) continue;
      if (r < l) std::swap(l, r);
      label[r] = l;
    }
  }
  for (auto& [node, l] : label) l = root(node);
  std::map<std::string, std::string> name;  // class label -> apex id
  for (const auto& [node, l] : label) name.emplace(l, l);
  if (preferred) {
    std::map<std::string, std::string> best;
    for (const auto& s : simplices_of(objects[*preferred])) {
      const auto& l = label.at(tag(*preferred, s.id));
      auto it = best.find(l);
      if (it == best.end() || s.id < it->second) best[l] = s.id;
    }
    for (const auto& [l, id] : best) name[l] = id;
  }
  DeltaComplexBuilder builder;
  std::set<std::string> added;
  for (int k = 0;; ++k) {
    bool any = false;
    for (std::size_t o = 0; o < objects.size(); ++o) {
      if (k > objects[o].max_dim()) continue;
      any = true;
      for (const auto& s : simplices_of(objects[o])) {
        if (s.dim != k) continue;
        const auto& id = name.at(label.at(tag(o, s.id)));
        if (!added.insert(id).second) continue;
        std::vector<std::string> faces;
        for (const auto& f : s.faces) faces.push_back(name.at(label.at(tag(o, f))));
        builder.add(k, id, faces);
      }
    }
    if (!any) break;
  }
  Colimit out{builder.build(), {}};
  for (std::size_t o = 0; o < objects.size(); ++o) {
    std::map<std::string, std::string> leg;
    for (const auto& s : simplices_of(objects[o])) leg[s.id] = name.at(label.at(tag(o, s.id)));
    out.legs.push_back(std::move(leg));
  }
  return out;
}

DeltaComplex equaliser(const SimplicialMap& f, const SimplicialMap& g) {
  DeltaComplexBuilder builder;
  for (const auto& s : simplices_of(f.dom())) {
    if (f.image(s.id) == g.image(s.id)) builder.add(s.dim, s.id, s.faces);
  }
  return builder.build();
}

bool is_pullback(const awfs::ArrowSquare& square) {
  const auto& p = square.top.dom();
  const auto& y = square.bottom.dom();
  const auto& x = square.right.dom();
  for (int k = 0; k <= std::max({p.max_dim(), y.max_dim(), x.max_dim()}); ++k) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& ys : simplices_of(y)) {
      if (ys.dim != k) continue;
      for (const auto& xs : simplices_of(x)) {
        if (xs.dim == k && square.bottom.image(ys.id) == square.right.image(xs.id)) pairs.emplace(ys.id, xs.id);
      }
    }
    std::set<std::pair<std::string, std::string>> hit;
    std::size_t count = 0;
    for (const auto& ps : simplices_of(p)) {
      if (ps.dim != k) continue;
      ++count;
      hit.emplace(square.left.image(ps.id), square.top.image(ps.id));
    }
    if (hit.size() != count || hit != pairs) return false;
  }
  return true;
}

CellComplex mec_partition(const awfs::StrataSequence& seq) {
  std::map<std::string, int> birth;
  for (const auto& s : simplices_of(seq.base)) birth[s.id] = 0;
  std::vector<std::vector<awfs::Cell>> stages;
  for (const auto& st : seq.strata) {
    for (const auto& cell : st.cells()) {
      int stage = 0;
      for (const auto& id : image_ids(cell.attach)) stage = std::max(stage, birth.at(id));
      birth[cell.id] = stage + 1;
      if (stages.size() <= static_cast<std::size_t>(stage)) stages.resize(static_cast<std::size_t>(stage) + 1);
      stages[static_cast<std::size_t>(stage)].push_back(cell);
    }
  }
  std::vector<awfs::Stratum> strata;
  DeltaComplex current = seq.base;
  for (const auto& cells : stages) {
    std::vector<awfs::Cell> moved;
    for (const auto& c : cells) {
      std::unordered_map<std::string, std::string> assign;
      for (const auto& [from, to] : ids_of(c.attach)) assign.emplace(from, to);
      moved.push_back({c.id, c.dim, SimplicialMap::from_ids(c.attach.dom(), current, assign)});
    }
    strata.emplace_back(current, std::move(moved));
    current = strata.back().body();
  }
  return CellComplex(seq.base, std::move(strata));
}

std::size_t count_transposes(const CellComplex& c, const awfs::ArrowSquare& square, const awfs::FactorResult& fr) {
  if (c.height() > fr.kf.height()) return 0;
  std::vector<std::vector<std::vector<std::uint32_t>>> options(static_cast<std::size_t>(c.height()));
  for (int n = 0; n < c.height(); ++n) {
    const auto& st = c.strata()[static_cast<std::size_t>(n)];
    const auto& target = fr.kf.strata()[static_cast<std::size_t>(n)];
    for (const auto& cell : st.cells()) {
      std::vector<std::uint32_t> o;
      for (std::uint32_t j = 0; j < target.size(); ++j) {
        const auto& t = target.cell(j);
        if (t.dim == cell.dim && fr.ef.image(t.id) == square.bottom.image(cell.id)) o.push_back(j);
      }
      options[static_cast<std::size_t>(n)].push_back(std::move(o));
    }
  }
  std::size_t count = 0;
  std::vector<std::vector<std::uint32_t>> choice(options.size());
  for (std::size_t n = 0; n < options.size(); ++n) choice[n].assign(options[n].size(), 0);
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t n, std::size_t i) {
    if (n == options.size()) {
      try {
        awfs::CellComplexMorphism m(c, fr.kf, square.top, choice);
        if (ids_of(compose(fr.ef, m.body_map())) == ids_of(square.bottom)) ++count;
      } catch (const awfs::Error&) {
      }
      return;
    }
    if (i == options[n].size()) {
      pick(n + 1, 0);
      return;
    }
    for (auto j : options[n][i]) {
      choice[n][i] = j;
      pick(n, i + 1);
    }
  };
  pick(0, 0);
  return count;
}

}  // namespace oracle
