#include <doctest.h>

#include "theta/generators.hpp"
#include "theta/mesh.hpp"

#include <cmath>
#include <map>
#include <set>

using namespace theta;

TEST_CASE("unit square grid is a valid disk with chi = 1") {
  auto m = gen_square(4);
  CHECK(m->face_count() == 32);
  CHECK(m->total_area() == doctest::Approx(1.0).epsilon(1e-12));
  auto r = validate(*m);
  CHECK(r.ok());
  CHECK(r.is_disk);
  CHECK(r.euler == 1);
}

TEST_CASE("icosahedron is a valid sphere with chi = 2") {
  auto m = gen_icosahedron();
  CHECK(m->vertex_count() == 12);
  CHECK(m->edge_count() == 30);
  CHECK(m->face_count() == 20);
  auto r = validate(*m);
  CHECK(r.ok());
  CHECK(r.is_sphere);
  CHECK(r.euler == 2);
}

TEST_CASE("triangle inequality violation is flagged") {
  // one triangle with lengths (1, 1, 2.5)
  auto m = TriMesh::from_lengths(3, {{0, 1, 2}},
                                 {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{0, 2}, 2.5}});
  auto r = validate(*m);
  CHECK(!r.ok());
  bool found = false;
  for (const auto& v : r.violations)
    if (v.find("triangle inequality") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("areas: rectangle exact, icosphere normalized, additive") {
  auto rect = gen_rectangle(2.0, 0.5, 8);
  CHECK(rect->total_area() == doctest::Approx(1.0).epsilon(1e-12));

  auto sph = gen_icosphere(2, 1.0);
  CHECK(sph->total_area() == doctest::Approx(1.0).epsilon(1e-12));

  // additivity over any face partition
  auto m = gen_square(8);
  double sum = 0;
  for (int f = 0; f < m->face_count(); ++f) sum += m->face_area(f);
  CHECK(sum == doctest::Approx(m->total_area()).epsilon(1e-12));
}

TEST_CASE("refine: counts, area preservation, grid isomorphism") {
  auto ico = gen_icosahedron();
  auto r1 = refine(ico, 1);
  CHECK(r1->face_count() == 80);
  CHECK(r1->total_area() == doctest::Approx(ico->total_area()).epsilon(1e-12));
  auto sph = gen_icosphere(1, 2.5);
  auto r3 = refine(sph, 2);
  CHECK(r3->face_count() == sph->face_count() * 16);
  CHECK(r3->total_area() == doctest::Approx(2.5).epsilon(1e-12));

  // gen_square(2) refined once has the combinatorics of gen_square(4):
  // same face count, and the multiset of sorted face side lengths matches.
  auto a = refine(gen_square(2), 1);
  auto b = gen_square(4);
  REQUIRE(a->face_count() == b->face_count());
  auto key = [](const TriMesh& m, int f) {
    std::array<double, 3> k;
    for (int i = 0; i < 3; ++i) k[i] = m.edge_length(m.face_edges(f)[i]);
    std::sort(k.begin(), k.end());
    return k;
  };
  std::multiset<std::array<double, 3>> ka, kb;
  for (int f = 0; f < a->face_count(); ++f) ka.insert(key(*a, f));
  for (int f = 0; f < b->face_count(); ++f) kb.insert(key(*b, f));
  CHECK(ka == kb);
  auto va = validate(*a);
  CHECK(va.ok());
  CHECK(va.is_disk);
}

TEST_CASE("region: whole square, boundary loop, hemisphere disk") {
  auto m = gen_square(4);
  auto reg = Region::whole(m);
  CHECK(reg.is_disk());
  REQUIRE(reg.boundary_loops().size() == 1);
  CHECK(reg.boundary_length(0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(reg.area() == doctest::Approx(1.0).epsilon(1e-12));
  // boundary loop is oriented with the region on the left (ccw here)
  const auto& loop = reg.boundary_loops()[0];
  CHECK(loop.front() == 0);

  auto sph = gen_icosphere(2, 1.0);
  std::vector<int> upper;
  for (int f = 0; f < sph->face_count(); ++f) {
    const auto& fc = sph->face(f);
    const double z =
        sph->position(fc[0]).z() + sph->position(fc[1]).z() + sph->position(fc[2]).z();
    if (z > 0) upper.push_back(f);
  }
  Region hemi(sph, upper);
  CHECK(hemi.euler_characteristic() == 1);
  CHECK(hemi.boundary_loops().size() == 1);
  CHECK(hemi.is_disk());
  CHECK(hemi.area() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("region: cylinder is an annulus, sphere has no boundary") {
  auto cyl = gen_cylinder(1.0, 5.0, 12, 24);
  auto reg = Region::whole(cyl);
  CHECK(reg.is_annulus());
  CHECK(reg.euler_characteristic() == 0);
  REQUIRE(reg.boundary_loops().size() == 2);
  CHECK(reg.boundary_length(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reg.area() == doctest::Approx(5.0).epsilon(1e-12));

  auto pil = gen_pillow(6);
  auto vr = validate(*pil);
  CHECK(vr.ok());
  CHECK(vr.is_sphere);
  CHECK(pil->total_area() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(Region::whole(pil).is_sphere());
}

TEST_CASE("fingers and ellipsoid generators produce valid spheres") {
  auto fin = gen_fingers(3, 3);
  auto r = validate(*fin);
  CHECK(r.ok());
  CHECK(r.is_sphere);
  CHECK(fin->total_area() == doctest::Approx(1.0).epsilon(1e-12));

  auto ell = gen_ellipsoid(3, 1, 1, 3, 1.0);
  auto re = validate(*ell);
  CHECK(re.ok());
  CHECK(re.is_sphere);
}

TEST_CASE("angle deficit: flat interior vertices, pillow cone points") {
  auto m = gen_square(4);
  auto reg = Region::whole(m);
  CHECK(reg.interior_angle_deficit() == doctest::Approx(0.0).epsilon(1e-9));

  // the pillow's four corners carry deficit pi each (Gauss-Bonnet: 4 pi)
  auto pil = gen_pillow(4);
  double total = 0;
  for (int v = 0; v < pil->vertex_count(); ++v) total += pil->angle_deficit(v);
  CHECK(total == doctest::Approx(4.0 * M_PI).epsilon(1e-9));
}
