#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tatecalc/catalog.hpp"
#include "tatecalc/spectral.hpp"

using namespace tatecalc;
using namespace tatecalc::spectral;

namespace {

std::vector<Signature> pairs(int max_entry) {
  std::vector<Signature> out;
  for (int b = 1; b <= max_entry; ++b)
    for (int a = 0; a < b; ++a)
      out.push_back(Signature{a, b});
  return out;
}

std::vector<std::string> labels(const E2Page& page, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx)
    out.push_back(page.label(i));
  return out;
}

}  // namespace

TEST(Tch, Examples) {
  for (int i = 1; i <= 8; ++i) {
    EXPECT_EQ(tch(theta_tridegree(i)), 0);
    EXPECT_EQ(tch(alpha_tridegree(i)), 1);
  }
  EXPECT_EQ(tch({0, 0, 0}), 0);
  EXPECT_EQ(differential_target_degree({0, 3, 2}, 2), (Tridegree{2, 2, 2}));
}

TEST(E2Page, GeneratorsForOneTwo) {
  const auto full = build_e2({1, 2}, Variant::full, 4);
  EXPECT_EQ(full.alpha_indices(), std::vector<int>{2});
  EXPECT_EQ(full.theta_count(), 1);
  EXPECT_EQ(full.betas(), (std::vector<Bidegree>{{0, 0}, {1, 1}}));
  EXPECT_EQ(full.basis()[*full.alpha_class(2)].degree, (Tridegree{0, 3, 2}));
  EXPECT_EQ(full.basis()[*full.theta_class(1)].degree, (Tridegree{1, 1, 1}));
  EXPECT_EQ(full.label(*full.beta_class(0)), "1");
  EXPECT_EQ(full.label(*full.beta_class(1)), "β′2");

  const auto flag = build_e2({1, 2}, Variant::flag, 4);
  EXPECT_EQ(flag.betas(), (std::vector<Bidegree>{{0, 0}}));
  EXPECT_FALSE(flag.beta_class(1));
}

TEST(E2Page, GeneratorsForTwoFour) {
  const auto page = build_e2({2, 4}, Variant::full, 6);
  EXPECT_EQ(page.alpha_indices(), (std::vector<int>{3, 4}));
  EXPECT_EQ(page.theta_count(), 2);
  EXPECT_EQ(page.betas().size(), 4u);
  EXPECT_EQ(page.betas().front(), (Bidegree{0, 0}));
}

TEST(E2Page, Rejections) {
  EXPECT_THROW(build_e2({3}, Variant::full, 4), InvalidArgument);
  EXPECT_THROW(build_e2({1, 2}, Variant::full, -1), InvalidArgument);
  EXPECT_THROW(check_ss_description({1, 3}, 2), InvalidArgument);
}

TEST(E2Page, ZeroWeightHoldsOnlyTheUnit) {
  const auto page = build_e2({1, 2}, Variant::full, 0);
  ASSERT_EQ(page.basis().size(), 1u);
  EXPECT_EQ(page.label(0), "1");
}

TEST(E2Page, LabelsAndLookup) {
  const auto page = build_e2({2, 3}, Variant::full, 10);
  BasisClass key{{2, 3}, {2, 1}, 1, {}};
  const auto idx = page.find(key);
  ASSERT_TRUE(idx);
  EXPECT_EQ(page.label(*idx), "α′2·α′3·θ1^2·θ2·β′2");
  EXPECT_EQ(page.basis()[*idx].degree, (Tridegree{3, 3 + 5 + 2 + 3 + 1, 2 + 3 + 2 + 2 + 1}));
  EXPECT_FALSE(page.find({{1}, {0, 0}, 0, {}}));
}

TEST(Differentials, ExamplesForOneTwo) {
  const auto page = build_e2({1, 2}, Variant::full, 4);
  const auto a = *page.alpha_class(2);
  EXPECT_EQ(labels(page, differential_targets(page, a, 2)), std::vector<std::string>{"θ1^2"});
  EXPECT_TRUE(differential_targets(page, a, 3).empty());
  for (int s = 2; s <= 8; ++s)
    EXPECT_TRUE(differential_targets(page, *page.beta_class(0), s).empty());
  EXPECT_THROW(differential_targets(page, a, 1), InvalidArgument);
}

TEST(Differentials, TargetsLoseExactlyOneTch) {
  for (const auto& sig : {Signature{1, 2}, Signature{2, 4}, Signature{1, 2, 4}}) {
    const auto page = build_e2(sig, Variant::full, 7);
    for (std::size_t i = 0; i < page.basis().size(); ++i)
      for (int s = 2; s <= 6; ++s) {
        const auto target = differential_target_degree(page.basis()[i].degree, s);
        EXPECT_EQ(tch(target), tch(page.basis()[i].degree) - 1);
        for (auto t : differential_targets(page, i, s))
          EXPECT_EQ(page.basis()[t].degree, target);
      }
  }
}

TEST(E2Page, NoNegativeTotalChowHeight) {
  for (const auto& sig : pairs(8))
    for (auto v : {Variant::full, Variant::flag}) {
      const auto page = build_e2(sig, v, sig.back() <= 6 ? 12 : 9);
      for (const auto& c : page.basis())
        ASSERT_GE(tch(c.degree), 0) << catalog::to_string(sig) << " " << page.label(c);
    }
}

TEST(E2Page, TchIsAdditive) {
  const auto page = build_e2({2, 4}, Variant::full, 8);
  for (const auto& c : page.basis()) {
    long sum = tch({0, page.betas()[c.beta].p, page.betas()[c.beta].q});
    sum += static_cast<long>(c.alphas.size());
    EXPECT_EQ(tch(c.degree), sum);
  }
}

TEST(E2Page, SeriesFromGeneratorsMatchesEnumeration) {
  for (const auto& sig : {Signature{1, 2}, Signature{2, 5}, Signature{1, 3, 4}, Signature{0, 2, 3}})
    for (auto v : {Variant::full, Variant::flag})
      for (long w : {0L, 3L, 8L}) {
        const auto page = build_e2(sig, v, w);
        EXPECT_EQ(e2_series(page), e2_series_from_basis(page)) << catalog::to_string(sig) << " w=" << w;
      }
}

TEST(E2Page, FlagProjectionSplitsInclusion) {
  for (const auto& sig : {Signature{1, 2}, Signature{2, 4}, Signature{1, 2, 3}}) {
    const auto full = build_e2(sig, Variant::full, 7);
    const auto flag = build_e2(sig, Variant::flag, 7);
    for (std::size_t i = 0; i < flag.basis().size(); ++i) {
      const auto up = include_from_flag(flag, full, i);
      EXPECT_EQ(project_to_flag(full, flag, up), i);
    }
    std::size_t projected = 0;
    for (std::size_t i = 0; i < full.basis().size(); ++i) {
      const auto down = project_to_flag(full, flag, i);
      const bool height_zero = chow_height(full.betas()[full.basis()[i].beta]) == 0;
      EXPECT_EQ(down.has_value(), height_zero);
      projected += down.has_value();
    }
    EXPECT_EQ(projected, flag.basis().size());
  }
}

TEST(SSDescription, Examples) {
  const auto r12 = check_ss_description({1, 2}, 4);
  EXPECT_TRUE(r12.passed);
  ASSERT_EQ(r12.alphas.size(), 1u);
  EXPECT_EQ(r12.alphas[0].flag_pages, std::vector<int>{2});
  for (const auto& b : r12.full_betas)
    EXPECT_TRUE(b.pages_with_targets.empty());

  const auto r23 = check_ss_description({2, 3}, 6);
  EXPECT_TRUE(r23.passed);
  ASSERT_EQ(r23.alphas.size(), 2u);
  for (const auto& a : r23.alphas)
    EXPECT_FALSE(a.flag_pages.empty());
  EXPECT_FALSE(r23.notes.empty());
}

TEST(SSDescription, PositiveHeightGeneratorsNeedTheRankCount) {
  const auto r = check_ss_description({2, 4}, 6);
  EXPECT_TRUE(r.passed);
  std::size_t by_rank = 0;
  for (const auto& b : r.full_betas) {
    if (b.tch == 0)
      EXPECT_TRUE(b.pages_with_targets.empty());
    by_rank += b.obstruction == "rank";
  }
  EXPECT_GT(by_rank, 0u);
  for (const auto& b : r.flag_betas)
    EXPECT_EQ(b.obstruction, "tch");
}

TEST(RankCheck, Examples) {
  const auto r = einfty_rank_check({1, 2}, 10);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(to_string(r.target), "1 + t*u + t^2*u + t^3*u^2");
  EXPECT_TRUE(einfty_rank_check({2, 3}, 10).passed);
  EXPECT_TRUE(einfty_rank_check({0, 1, 2}, 10).passed);
  EXPECT_EQ(einfty_rank_check({0, 1, 2}, 10).target, poincare(catalog::motive_fl({1, 2})));
}

TEST(Chart, DeterministicAndLabeled) {
  const auto page = build_e2({2, 4}, Variant::full, 6);
  const auto a = render_svg(page);
  EXPECT_EQ(a, render_svg(build_e2({2, 4}, Variant::full, 6)));
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
  EXPECT_NE(a.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(a.find(">l</text>"), std::string::npos);
  EXPECT_NE(a.find(">q</text>"), std::string::npos);
  EXPECT_NE(a.find("α′3"), std::string::npos);
  EXPECT_NE(a.find("θ1"), std::string::npos);
}

TEST(Chart, ZeroWeightPage) {
  const auto svg = render_svg(build_e2({1, 2}, Variant::full, 0));
  EXPECT_NE(svg.find(">1 p=0</text>"), std::string::npos);
}

TEST(Chart, FileOutput) {
  const auto page = build_e2({1, 2}, Variant::full, 4);
  const auto path = std::filesystem::temp_directory_path() / "tatecalc_chart_test.svg";
  chart_svg(page, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), render_svg(page));
  std::filesystem::remove(path);
  EXPECT_THROW(chart_svg(page, "/nonexistent-dir/x/y.svg"), Error);
}

TEST(Json, PageAndTargets) {
  const auto page = build_e2({1, 2}, Variant::full, 4);
  const auto j = to_json(page);
  EXPECT_EQ(j["generators"]["alpha"].size(), 1u);
  EXPECT_EQ(j["classes"].size(), page.basis().size());
  const auto t = targets_json(page, 8);
  EXPECT_EQ(t["targets"][0]["class"], "α′2");
  EXPECT_EQ(t["targets"][0]["pages"][0]["s"], 2);
  EXPECT_EQ(t["targets"][0]["pages"][0]["targets"][0], "θ1^2");
}
