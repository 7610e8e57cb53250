#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lipdyn/errors.hpp"

namespace lipdyn::dsl {

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind { Number, Identifier, Operator, Punctuation, Keyword, End };

struct Token {
    TokenKind kind;
    std::string lexeme;
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    std::size_t offset = 0;  // byte offset into the source
};

/// Lex a map-definition source. `#` starts a comment running to end of line.
/// Throws LexError on an illegal character. The returned list ends with an
/// End token.
std::vector<Token> tokenize(const std::string& source);

// ---------------------------------------------------------------------------
// AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Constant, Var, Neg, Abs, Add, Sub, Mul, Div, Pow, Piecewise };

enum class CmpOp { Lt, Le, Gt, Ge };

/// Guard of a piecewise branch. The surface grammar only admits
/// `ident <op> number`; derivatives of abs over a compound argument use the
/// internal expression form (lhs_expr non-null), which is evaluatable but has
/// no concrete syntax.
struct Guard {
    std::string var;
    CmpOp op;
    double bound;
    ExprPtr lhs_expr;  // null for the surface `var <op> bound` form
};

struct Branch;

struct Expr {
    ExprKind kind;
    double value = 0.0;           // Constant
    std::string name;             // Var
    ExprPtr lhs, rhs;             // Neg/Abs use lhs only; Pow uses lhs + exponent
    int exponent = 0;             // Pow, >= 0
    std::vector<Branch> branches; // Piecewise guarded branches (>= 1)
    ExprPtr otherwise;            // Piecewise else-branch
};

struct Branch {
    Guard guard;
    ExprPtr value;
};

ExprPtr constant(double v);
ExprPtr var(std::string name);
ExprPtr neg(ExprPtr e);
ExprPtr abs(ExprPtr e);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, int exponent);
ExprPtr piecewise(std::vector<Branch> branches, ExprPtr otherwise);

bool structurally_equal(const Expr& a, const Expr& b);

struct MapDefinition {
    std::string name;
    std::string variable;
    ExprPtr body;
    ExprPtr derivative;              // differentiate(body) after simplify
    std::vector<double> breakpoints; // sorted, deduplicated (1e-12 abs tol)
};

// ---------------------------------------------------------------------------
// Operations

/// Parse a full map definition: `map f(x) = expr`.
/// Precedence: Pow > Neg > Mul/Div > Add/Sub; Pow right-associative.
/// Breakpoints are populated from guard boundary constants.
MapDefinition parse_map(const std::string& source);

/// Parse just an expression (used by tests and generators).
ExprPtr parse_expr_string(const std::string& source, const std::string& variable = "x");

/// Evaluate with the single map variable bound to x. Piecewise takes the
/// first satisfied guard. Throws EvalError on division by zero.
double evaluate(const Expr& expr, double x);

/// Symbolic derivative with respect to `variable`. Total on well-formed
/// expressions; abs differentiates to a sign-split piecewise whose value at
/// the kink is the else-branch (the kink is reported as a breakpoint instead).
ExprPtr differentiate(const Expr& expr, const std::string& variable);

/// Constant folding and identity elimination. Idempotent; preserves value at
/// every non-error point.
ExprPtr simplify(const ExprPtr& expr);

/// Emit source text in the surface grammar; parse_expr_string inverts it
/// structurally for any grammar-reachable AST.
std::string pretty_print(const Expr& expr);

/// Candidate non-differentiability points in [lo, hi]: guard boundary
/// constants plus sign-change roots of every abs argument, located by grid
/// scan and bisection to 1e-12.
std::vector<double> nondifferentiable_points(const MapDefinition& def, double lo, double hi,
                                             int grid_n);

/// Sort + dedup (1e-12 absolute) helper shared by breakpoint producers.
std::vector<double> dedup_sorted(std::vector<double> xs, double tol = 1e-12);

}  // namespace lipdyn::dsl
