#pragma once

#include "lcc/common.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcc {

// Leaf output as a function of the third answer a3.
enum class Tag { PlusOne, MinusOne, PlusA3, MinusA3 };
int tag_value(Tag t, int a3);
bool tag_is_constant(Tag t);
int tag_sign(Tag t);

// Coin outcomes at a leaf: each outcome picks one deterministic tag.
struct LeafRule {
    std::vector<std::pair<Tag, Rational>> mix;
};

// Branch index 0 follows answer +1, index 1 follows answer -1.
inline int branch_of(int answer) { return answer == 1 ? 0 : 1; }

struct ThirdQuery {
    int v;
    Rational p;
    LeafRule leaf;
};
struct SecondQuery {
    int v;
    Rational p;
    std::array<std::vector<ThirdQuery>, 2> next;
};
struct FirstQuery {
    int v;
    Rational p;
    std::array<std::vector<SecondQuery>, 2> next;
};
struct LocalDecoder {
    std::vector<FirstQuery> first;
};

struct DecoderTree {
    int n = 0;
    std::vector<LocalDecoder> at;
};

// Throws std::invalid_argument naming the first defect.
void validate_tree(const DecoderTree& tree);

using SignVec = std::vector<int>;  // entries in {-1, +1}

// E[Dec^x(u)] by walking the tree along the answers in x.
Rational simulate_decoder(const DecoderTree& tree, int u, const SignVec& x);
// Upper bound on the probability that u's decoder queries v, maximised branch by branch.
Rational max_query_probability(const DecoderTree& tree, int u, int v);
Rational measured_delta(const DecoderTree& tree);

int and_poly(int s1, int s2);

struct Transcript {
    int v1, a1, v2, a2, v3;
    int rand;  // index into the leaf mix
    Tag tag;
    Rational wt;
};
std::vector<Transcript> transcripts(const DecoderTree& tree, int u);

struct WeightSystem {
    struct GTerm {
        int v1, a1, v2, a2, v3, rand, sigma;
        Rational wt;
    };
    struct HTerm {
        int v1, a1, v2, a2, v3, rand, sigma;
        Rational wt;
    };
    std::vector<GTerm> g;
    std::vector<HTerm> h;
};
WeightSystem compile_and_weights(const DecoderTree& tree, int u);

Rational wt_total(const WeightSystem& ws);
Rational wt_and_sum(const WeightSystem& ws, const SignVec& x);
Rational wt_poly_sum(const WeightSystem& ws, const SignVec& x);
// max over v of the weight on transcripts touching v
Rational and_system_max_incident(const WeightSystem& ws);

// A code given by its full codeword list (small n only).
struct Code {
    int n = 0;
    int k = 0;
    std::vector<SignVec> codewords;
    std::vector<SignVec> messages;  // message of each codeword, length k
    std::vector<int> systematic;    // coordinate carrying message bit i
};

// (x, -x, 1^n, (-1)^n)
Code padded_code(const Code& base);

// Padded index helpers.
struct Padded {
    int n;
    int pos(int v) const { return v; }
    int neg(int v) const { return n + v; }
    int one(int v) const { return 2 * n + v; }
    int minus_one(int v) const { return 3 * n + v; }
    int signed_vertex(int sign, int v) const { return sign == 1 ? pos(v) : neg(v); }
    int constant(int sign, int v) const { return sign == 1 ? one(v) : minus_one(v); }
    int negate(int v) const { return (((v / n) ^ 1) * n) + v % n; }
};

struct HypergraphCollection {
    int n = 0;
    std::vector<std::map<std::array<int, 3>, Rational>> H;
    std::vector<std::map<std::array<int, 2>, Rational>> G;

    Rational total_H(int u) const;
    Rational total_G(int u) const;
    Rational incident(int u, int v) const;
    Rational f(int u, const SignVec& x) const;  // phi_u + psi_u
};

struct CompileReport {
    HypergraphCollection col;
    Rational delta;         // measured on the base decoder
    Rational max_incident;  // over all (u, v) of the collection
    int worst_u = -1, worst_v = -1;
    Rational c;             // max_incident * delta * n'
    bool normalization_ok = true;
    std::size_t identity_failures = 0;  // f_u(x) != E[Dec'(u)] over padded codewords
};

CompileReport compile_collection(const DecoderTree& tree, const Code& base);
// E[Dec'(u)] on a padded codeword (constants for the padded constant bits).
Rational padded_expectation(const DecoderTree& tree, int u, const SignVec& padded_x);

// Toy zoo.
struct ToyCase {
    std::string name;
    Code code;
    DecoderTree tree;
    Rational epsilon;  // 1 - completeness (so E[Dec x_u] >= 1 - 2 epsilon)
    bool perfect;
};
Code hadamard_code(int k);
Code design_code(int t);  // dual code of the t-dimensional line design, systematic
DecoderTree hadamard_decoder(int k);
DecoderTree hadamard_fixed_decoder(int k);
DecoderTree hadamard_adaptive_decoder(int k);
DecoderTree noisy_decoder(const DecoderTree& base, const Rational& eps);
DecoderTree constant_decoder(int k);
DecoderTree design_decoder(int t);
std::vector<ToyCase> toy_zoo();

std::string tree_to_json(const DecoderTree& tree);
DecoderTree tree_from_json(const std::string& text);
std::string code_to_json(const Code& code);
Code code_from_json(const std::string& text);
std::string collection_to_jsonl(const HypergraphCollection& col);
HypergraphCollection collection_from_jsonl(const std::string& text);

}  // namespace lcc
