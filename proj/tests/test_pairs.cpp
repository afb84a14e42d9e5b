#include "sparsesel/pairs.hpp"

#include <doctest.h>

#include <set>

using namespace sparsesel;

namespace {

std::vector<int> balanced_ids(int subjects, int per) {
    std::vector<int> ids;
    for (int s = 0; s < subjects; ++s)
        for (int i = 0; i < per; ++i) ids.push_back(s);
    return ids;
}

}  // namespace

TEST_CASE("pair counts") {
    const PairCounts big = count_pairs(300, 4);
    CHECK(big.total == 719400);
    CHECK(big.intra == 1800);
    CHECK(big.extra == 717600);
    const PairCounts one = count_pairs(1, 2);
    CHECK(one.total == 1);
    CHECK(one.intra == 1);
    CHECK(one.extra == 0);
    const PairCounts two = count_pairs(2, 2);
    CHECK(two.total == 6);
    CHECK(two.intra == 2);
    CHECK(two.extra == 4);
    CHECK(count_pairs(0, 5).total == 0);
}

TEST_CASE("pair counts match enumeration") {
    for (int c = 1; c <= 6; ++c) {
        for (int k = 1; k <= 5; ++k) {
            const auto ids = balanced_ids(c, k);
            std::uint64_t intra = 0;
            std::uint64_t extra = 0;
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = i + 1; j < ids.size(); ++j) (ids[i] == ids[j] ? intra : extra)++;
            const PairCounts got = count_pairs(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(k));
            CHECK(got.intra == intra);
            CHECK(got.extra == extra);
        }
    }
}

TEST_CASE("select pairs keeps every intra pair and the requested ratio") {
    const auto ids = balanced_ids(10, 4);
    SamplingPolicy p;
    p.ratio = {1, 7};
    const PairSelection sel = select_pairs(ids, p);
    std::size_t intra = 0;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& pi : sel.pairs) {
        CHECK(pi.first < pi.second);
        CHECK(seen.insert({pi.first, pi.second}).second);
        const bool same = ids[pi.first] == ids[pi.second];
        CHECK(same == (pi.label == PairLabel::intra));
        intra += same ? 1 : 0;
    }
    CHECK(intra == 60);
    CHECK(sel.pairs.size() == 60 + 420);
    CHECK_FALSE(sel.clamped);
    CHECK(sel.available_extra == 720);
}

TEST_CASE("select pairs at 1:1") {
    const auto ids = balanced_ids(5, 3);
    SamplingPolicy p;
    p.ratio = {1, 1};
    const PairSelection sel = select_pairs(ids, p);
    CHECK(sel.pairs.size() == 30);
    CHECK(sel.requested_extra == 15);
}

TEST_CASE("select pairs clamps to the available extras") {
    const auto ids = balanced_ids(2, 3);
    SamplingPolicy p;
    p.ratio = {1, 10};
    const PairSelection sel = select_pairs(ids, p);
    CHECK(sel.requested_extra == 60);
    CHECK(sel.available_extra == 9);
    CHECK(sel.clamped);
    CHECK(sel.pairs.size() == 6 + 9);
}

TEST_CASE("select pairs is deterministic per seed") {
    const auto ids = balanced_ids(8, 4);
    SamplingPolicy p;
    const auto a = select_pairs(ids, p);
    const auto b = select_pairs(ids, p);
    REQUIRE(a.pairs.size() == b.pairs.size());
    bool same = true;
    for (std::size_t i = 0; i < a.pairs.size(); ++i)
        same = same && a.pairs[i].first == b.pairs[i].first && a.pairs[i].second == b.pairs[i].second;
    CHECK(same);
    p.seed = 43;
    const auto c = select_pairs(ids, p);
    bool differ = false;
    for (std::size_t i = 0; i < a.pairs.size(); ++i)
        differ = differ || a.pairs[i].first != c.pairs[i].first || a.pairs[i].second != c.pairs[i].second;
    CHECK(differ);
}

TEST_CASE("sampling policy validation") {
    SamplingPolicy p;
    p.ratio = {1, 11};
    CHECK_THROWS(p.validate());
    p.ratio = {2, 1};
    CHECK_THROWS(p.validate());
    p.ratio = {0, 1};
    CHECK_THROWS(p.validate());
    CHECK(SamplingRatio::parse("1:7").extra == 7);
    CHECK(SamplingRatio::parse("2:3").to_string() == "2:3");
    CHECK_THROWS(SamplingRatio::parse("17"));
    CHECK_THROWS(SamplingRatio::parse("a:b"));
}

TEST_CASE("abs difference") {
    Vector a(3);
    Vector b(3);
    a << 1.0, 0.5, 0.2;
    b << 0.0, 1.0, 0.2;
    const FeatureVector d = abs_difference(a, b);
    CHECK(d.values()(0) == 1.0);
    CHECK(d.values()(1) == 0.5);
    CHECK(d.values()(2) == 0.0);
    CHECK_THROWS_AS(abs_difference(a, Vector::Zero(2)), dimension_error);
}

TEST_CASE("assemble matrix signs rows and sets margins") {
    Vector x(2);
    x << 0.5, 0.2;
    std::vector<PairSample> samples;
    for (auto l : {PairLabel::intra, PairLabel::intra, PairLabel::intra, PairLabel::extra})
        samples.push_back({FeatureVector(x), l, 0, 1});
    const AssembledSystem sys = assemble_matrix(samples, {MarginKind::sfisher, 1.0});
    const Matrix& y = sys.y.matrix();
    CHECK(y.rows() == 4);
    CHECK(y(0, 0) == 1.0);
    CHECK(y(0, 1) == 0.5);
    CHECK(y(0, 2) == 0.2);
    CHECK(y(3, 0) == -1.0);
    CHECK(y(3, 1) == -0.5);
    CHECK(y(3, 2) == -0.2);
    const Vector& b = sys.margin.values();
    CHECK(b(0) == 0.75);
    CHECK(b(3) == 0.25);
    CHECK(sys.labels == std::vector<int>{1, 1, 1, 0});
    // Per-class margin mass is n_c^2 / n.
    CHECK(b.sum() == doctest::Approx((9.0 + 1.0) / 4.0));
    CHECK_THROWS(assemble_matrix({}, {MarginKind::ssmes, 1.0}));
}

TEST_CASE("build pairs uses absolute feature differences") {
    std::vector<GaborFeatureVector> feats(4);
    for (int i = 0; i < 4; ++i) feats[static_cast<std::size_t>(i)].values = Vector::Constant(3, i * 0.25);
    const DatasetManifest m({{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "y"}});
    SamplingPolicy p;
    p.ratio = {1, 2};
    const PairBuildResult r = build_pairs(feats, m, p);
    CHECK(r.samples.size() == 6);
    for (const auto& s : r.samples) {
        const double want = 0.25 * static_cast<double>(s.second - s.first);
        CHECK(s.feature.values()(1) == doctest::Approx(want));
    }
    CHECK(r.samples[0].label == PairLabel::intra);
    CHECK(r.samples[1].label == PairLabel::intra);
    CHECK_THROWS_AS(build_pairs({feats[0]}, m, p), dimension_error);
}

TEST_CASE("manifest parsing") {
    const DatasetManifest m = DatasetManifest::parse("path,subject\nimgs/a.pgm,alice\nimgs/b.pgm,bob\nc.pgm,alice\n");
    CHECK(m.size() == 3);
    CHECK(m.subjects() == std::vector<std::string>{"alice", "bob"});
    CHECK(m.subject_ids() == std::vector<int>{0, 1, 0});
    CHECK(m.count_for("alice") == 2);
    CHECK_THROWS(DatasetManifest::parse("file,who\na,b\n"));
    CHECK_THROWS(DatasetManifest::parse("path,subject\n"));
    CHECK_THROWS(DatasetManifest::parse("path,subject\na,x\na,y\n"));
    CHECK_THROWS(DatasetManifest::parse("path,subject\na,x,extra\n"));
}
