#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "leibniz/classify.hpp"
#include "leibniz/io.hpp"

using namespace leibniz;

namespace {

// determinant-±1 integer matrix with small entries, built from elementary
// row operations; deterministic from the generator state
Matrix unimodular_scramble(std::mt19937& rng, std::size_t d) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(d) - 1), coin(0, 1);
    for (;;) {
        Matrix P = Matrix::identity(d);
        for (int step = 0; step < static_cast<int>(2 * d); ++step) {
            int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            Rat c = coin(rng) ? 1 : -1;
            for (std::size_t k = 0; k < d; ++k) P.at(i, k) += c * P.at(j, k);
        }
        bool small = true;
        for (std::size_t i = 0; i < d && small; ++i)
            for (std::size_t j = 0; j < d && small; ++j)
                if (P.at(i, j) < Rat(-3) || P.at(i, j) > Rat(3)) small = false;
        if (!small) continue;
        Rat det = P.determinant();
        if (det == Rat(1) || det == Rat(-1)) return P;
    }
}

// claimed isomorphism certificate: bracket compatibility of the rows of P
bool is_isomorphism(const LeibnizAlgebra& from, const LeibnizAlgebra& onto, const Matrix& P) {
    const std::size_t d = from.dim();
    if (sgn(P.determinant()) == 0) return false;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec lhs = from.bracket(P.row(i), P.row(j));
            Vec rhs = zero_vec(d);
            for (std::size_t k = 0; k < d; ++k)
                rhs = add(rhs, scale(P.row(k), onto.c(i, j, k)));
            if (lhs != rhs) return false;
        }
    return true;
}

// experimental equivalence probe (small dimensions): classify both sides
// and compare the canonical targets; no completeness claim
bool isomorphic(const LeibnizAlgebra& a, const LeibnizAlgebra& b) {
    auto ra = classify(a), rb = classify(b);
    if (ra.variant != rb.variant || ra.n != rb.n) return false;
    if (ra.variant == ClassificationVariant::Template)
        return ra.alpha == rb.alpha && ra.beta == rb.beta;
    return ra.variant != ClassificationVariant::NotApplicable;
}

} // namespace

TEST_CASE("six-dim family constants") {
    auto L = construct_sl22(1, 0);
    // <h, f> = -2f + 0*v2 at beta = 0
    CHECK(L.bracket(unit_vec(6, 1), unit_vec(6, 0)) == scale(unit_vec(6, 0), -2));
    auto easy = is_standard(construct_sl22(0, 0));
    REQUIRE(easy);
    CHECK(Subspace::span(*easy) ==
          Subspace::span(6, {unit_vec(6, 0), unit_vec(6, 1), unit_vec(6, 2)}));
    CHECK(is_simple(construct_sl22(5, Rat(-3, 2))).simple);
}

TEST_CASE("general family constants") {
    auto L = construct_sl2n(4, 1, 0);
    // <f, e> = -h + (4/16) v2
    CHECK(L.bracket(unit_vec(8, 0), unit_vec(8, 2)) ==
          add(scale(unit_vec(8, 1), -1), scale(unit_vec(8, 5), Rat(1, 4))));
    auto L2 = construct_sl2n(4, 0, 1);
    // <h, f> = -2f - 2 v3
    CHECK(L2.bracket(unit_vec(8, 1), unit_vec(8, 0)) ==
          add(scale(unit_vec(8, 0), -2), scale(unit_vec(8, 6), -2)));
    CHECK_FALSE(verify_leibniz(construct_sl2n(8, Rat(5), Rat(-3, 2))));
}

TEST_CASE("family constructor guards") {
    CHECK_THROWS_AS(construct_sl2n(5, 0, 0), BadParity);
    CHECK_THROWS_AS(construct_sl2n(2, 0, 0), BadRange);
    CHECK_THROWS_AS(construct_standard(0), BadRange);
}

TEST_CASE("standard construction") {
    auto L1 = construct_standard(1);
    CHECK(L1.dim() == 5);
    CHECK_FALSE(verify_leibniz(L1));
    CHECK(is_simple(L1).simple);
    CHECK(is_standard(L1));
    CHECK(construct_standard(4).constants() == construct_sl2n(4, 0, 0).constants());
    auto L3 = construct_standard(3);
    CHECK(L3.dim() == 7);
    CHECK(is_standard(L3));
    CHECK(is_simple(L3).simple);
}

TEST_CASE("triple normalization of the factor") {
    auto sl2 = lie_factor(construct_standard(2)).algebra; // basis already (f, h, e)
    auto t = find_sl2_triple(sl2);
    CHECK(t.e == unit_vec(3, 2));
    CHECK(t.h == unit_vec(3, 1));
    CHECK(t.f == unit_vec(3, 0));

    std::mt19937 rng(23);
    Matrix P = unimodular_scramble(rng, 3);
    auto twisted = change_basis(sl2, P);
    auto tt = find_sl2_triple(twisted);
    CHECK(twisted.bracket(tt.h, tt.e) == scale(tt.e, 2));
    CHECK(twisted.bracket(tt.h, tt.f) == scale(tt.f, -2));
    CHECK(twisted.bracket(tt.e, tt.f) == tt.h);
}

TEST_CASE("non-sl2 inputs are rejected") {
    std::vector<Rat> c(27); // Heisenberg [x,y] = z
    c[(0 * 3 + 1) * 3 + 2] = 1;
    c[(1 * 3 + 0) * 3 + 2] = -1;
    CHECK_THROWS_AS(find_sl2_triple(LeibnizAlgebra({"x", "y", "z"}, std::move(c))), NotSl2);
}

TEST_CASE("classification of a scrambled template") {
    auto L = construct_sl2n(4, 1, 2);
    std::mt19937 rng(29);
    Matrix P = unimodular_scramble(rng, 8);
    auto twisted = change_basis(L, P);
    auto res = classify(twisted);
    REQUIRE(res.variant == ClassificationVariant::Template);
    CHECK(res.n == 4);
    auto target = construct_sl2n(4, res.alpha, res.beta);
    CHECK(change_basis(twisted, res.basis_change).constants() == target.constants());
    CHECK(is_isomorphism(twisted, target, res.basis_change));
}

TEST_CASE("classification of standard odd-dimensional algebras") {
    auto res = classify(construct_standard(3));
    REQUIRE(res.variant == ClassificationVariant::Standard);
    CHECK(res.n == 3);
    // rows 0..2 span a closed antisymmetric complement of the annihilator
    Subspace comp = Subspace::span(
        7, {res.basis_change.row(0), res.basis_change.row(1), res.basis_change.row(2)});
    auto bar = subalgebra(construct_standard(3), comp);
    CHECK(is_antisymmetric(bar));
    CHECK(subspace_intersect(comp, annihilator(construct_standard(3)).space).is_zero());
}

TEST_CASE("template preference at the coincidence point") {
    auto res = classify(construct_sl22(0, 0));
    CHECK(res.variant == ClassificationVariant::Template);
    CHECK(res.n == 2);
    CHECK(sgn(res.alpha) == 0);
    CHECK(sgn(res.beta) == 0);
}

TEST_CASE("non-simple inputs are not classified") {
    auto sl2 = lie_factor(construct_standard(1)).algebra;
    auto res = classify(sl2);
    CHECK(res.variant == ClassificationVariant::NotApplicable);
    CHECK_FALSE(res.note.empty());
}

TEST_CASE("parameters are absorbed into a canonical template") {
    // over the rationals the corrections kill both parameters, so the
    // equivalence probe identifies all members of a fixed-n family
    CHECK(isomorphic(construct_sl22(1, 0), construct_sl22(0, 0)));
    CHECK(isomorphic(construct_sl2n(4, 1, 2), construct_sl2n(4, 0, 0)));
    CHECK_FALSE(isomorphic(construct_sl22(1, 1), construct_standard(3)));
}

TEST_CASE("json round trips") {
    auto L = construct_sl22(1, 0);
    auto round = parse_algebra(serialize_algebra(L));
    CHECK(round.labels() == L.labels());
    CHECK(round.constants() == L.constants());
    // canonical file text round trips byte for byte
    std::string text = serialize_algebra(L);
    CHECK(serialize_algebra(parse_algebra(text)) == text);

    std::string path = "roundtrip_tmp.json";
    save_algebra(construct_sl2n(6, Rat(-3, 2), 5), path);
    auto loaded = load_algebra(path);
    CHECK(loaded.constants() == construct_sl2n(6, Rat(-3, 2), 5).constants());
    std::remove(path.c_str());
}

TEST_CASE("sparse bracket entries expand on load") {
    std::string text = R"({
      "format_version": 1,
      "dim": 6,
      "labels": ["f", "h", "e", "v0", "v1", "v2"],
      "brackets": {"h,e": [["e", "2"], ["v0", "2"]]}
    })";
    auto L = parse_algebra(text);
    CHECK(L.bracket(unit_vec(6, 1), unit_vec(6, 2)) ==
          add(scale(unit_vec(6, 2), 2), scale(unit_vec(6, 3), 2)));
    CHECK(is_zero_vec(L.bracket(unit_vec(6, 2), unit_vec(6, 1)))); // unspecified stays zero
}

TEST_CASE("file validation failures") {
    CHECK_THROWS_AS(parse_algebra("not json"), ParseError);
    CHECK_THROWS_AS(parse_algebra(R"({"dim": 0, "labels": []})"), ValidationError);
    CHECK_THROWS_AS(
        parse_algebra(
            R"({"format_version": 1, "dim": 1, "labels": ["a"], "brackets": {"a,a": [["w", "1"]]}})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_algebra(
            R"({"format_version": 1, "dim": 1, "labels": ["a"], "brackets": {"a,a": [["a", "0.5"]]}})"),
        ValidationError);
    CHECK_THROWS_AS(parse_algebra(R"({"format_version": 1, "dim": 2, "labels": ["a", "a"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_algebra(R"({"format_version": 2, "dim": 0, "labels": []})"),
                    ValidationError);
}
