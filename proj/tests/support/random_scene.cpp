#include "random_scene.hpp"

#include <algorithm>
#include <cstdio>

namespace lotforge::testing {

ElementInstance random_instance(std::mt19937_64& rng, const std::string& entry_id, const std::string& id,
                                double width, double depth) {
  std::uniform_real_distribution<double> ux(0.0, width);
  std::uniform_real_distribution<double> uy(0.0, depth);
  std::uniform_real_distribution<double> urot(0.0, 360.0);
  std::uniform_real_distribution<double> uscale(kMinScale, kMaxScale);
  ElementInstance inst;
  inst.instance_id = id;
  inst.entry_id = entry_id;
  inst.pose = make_pose({ux(rng), uy(rng)}, urot(rng), uscale(rng));
  return inst;
}

Scene random_scene(std::mt19937_64& rng, const Catalog& catalog, const RandomSceneOptions& options) {
  std::vector<std::string> pool = options.entries;
  if (pool.empty()) {
    for (const CatalogEntry& e : catalog.entries()) pool.push_back(e.id);
  }
  LotSpec lot;
  lot.width = options.width;
  lot.depth = options.depth;
  Scene scene = create_scene(lot);
  std::uniform_int_distribution<int> count(options.min_elements, options.max_elements);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "e%04d", i + 1);
    scene.instances.push_back(random_instance(rng, pool[pick(rng)], id, lot.width, lot.depth));
  }
  std::shuffle(scene.instances.begin(), scene.instances.end(), rng);
  return scene;
}

}  // namespace lotforge::testing
