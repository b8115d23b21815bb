// Writes the shipped diagram corpus: gen_corpus <dir>
#include <iostream>

#include "cruxkh/cli.hpp"

using namespace ckh;

namespace {

std::vector<CorpusEntry> entries;

void add(const std::string& name, const Diagram& d, const std::string& family = "",
         std::optional<int> reducible = std::nullopt) {
  validate(d);
  CorpusEntry e;
  e.name = name;
  e.file = name + ".json";
  e.family = family.empty() ? name : family;
  e.singular = d.double_points() > 0;
  e.components = components(d);
  e.crossings = static_cast<int>(d.vertices.size()) - d.double_points();
  e.reducible = reducible;
  e.d = d;
  entries.push_back(std::move(e));
}

// the diagram plus its Reidemeister variants, all in one family
void add_family(const std::string& name, const Diagram& d, int max_crossings) {
  add(name, d);
  int k = 0;
  for (const auto& v : reidemeister_variants(d)) {
    if (static_cast<int>(v.vertices.size()) - v.double_points() > max_crossings) continue;
    add(name + "_rm" + std::to_string(k++), v, name);
  }
}

Diagram with_sign(const Diagram& d, bool positive) { return (stats(d).n_plus > stats(d).n_minus) == positive ? d : mirror(d); }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_corpus <dir>\n";
    return 2;
  }
  const Diagram trefoil = from_pd({{{1, 4, 2, 5}}, {{3, 6, 4, 1}}, {{5, 2, 6, 3}}});
  const Diagram hopf = from_pd({{{4, 1, 3, 2}}, {{2, 3, 1, 4}}});
  const Diagram fig8 = from_pd({{{4, 2, 5, 1}}, {{8, 6, 1, 5}}, {{6, 3, 7, 4}}, {{2, 7, 3, 8}}});
  const Diagram t51 = from_pd({{{1, 6, 2, 7}}, {{3, 8, 4, 9}}, {{5, 10, 6, 1}}, {{7, 2, 8, 3}}, {{9, 4, 10, 5}}});
  const Diagram right = with_sign(trefoil, true);

  add_family("unknot", unknot(), 8);
  add("kink_pos", kink(Kind::Pos), "unknot");
  add("kink_neg", kink(Kind::Neg), "unknot");
  add("kink_pos_v1", kink(Kind::Pos, 1), "unknot");
  add("kink_neg_v1", kink(Kind::Neg, 1), "unknot");
  add("unlink2", unlink(2));
  add_family("hopf_pos", with_sign(hopf, true), 8);
  add("hopf_neg", with_sign(hopf, false));
  add_family("trefoil_right", right, 8);
  add_family("trefoil_left", mirror(right), 8);
  add_family("fig8", fig8, 8);
  add_family("t51", t51, 8);
  for (int r = 0; r <= 5; ++r) {
    // D(0) is the unknot, D(1) the left trefoil, D(2) the figure-eight
    const std::string fam = r == 0 ? "unknot" : r == 1 ? "trefoil_left" : r == 2 ? "fig8" : "";
    add("D" + std::to_string(r), twist_knot(r), fam);
  }
  for (int r = 0; r <= 5; ++r) add("G" + std::to_string(r), twist_family(r, DoubleMode::Keep));
  {
    // one singular diagram with R1/R2/R3 variants
    const Diagram g1 = twist_family(1, DoubleMode::Keep);
    int k = 0;
    for (const auto& v : reidemeister_variants(g1))
      if (static_cast<int>(v.vertices.size()) - v.double_points() <= 7) add("G1_rm" + std::to_string(k++), v, "G1");
  }
  add("fi0", fi_diagram(0), "fi");
  add("fi1", fi_diagram(1), "fi");
  add("fig8_sing", make_double(fig8, fig8.vertices[1].id));
  add("trefoil_sing", make_double(right, right.vertices[0].id));
  {
    int c = 0;
    const Diagram a = reducible_diagram(right, right.edge_ids().front(), fig8, Kind::Neg, c);
    add("reducible_3_4", a, "", c);
    add("reducible_3_4_sing", make_double(a, c), "", c);
    const Diagram b = reducible_diagram(hopf, hopf.edge_ids().front(), mirror(right), Kind::Neg, c);
    add("reducible_hopf_3", b, "", c);
    add("reducible_hopf_3_sing", make_double(b, c), "", c);
  }
  save_corpus(argv[1], entries);
  std::cout << entries.size() << " diagrams written to " << argv[1] << '\n';
  return 0;
}
