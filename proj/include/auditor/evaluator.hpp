#pragma once

#include "auditor/access.hpp"
#include "mdwp/values.hpp"
#include "ocl/ast.hpp"
#include "ocl/pre_chains.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace auditor
{

enum class EvalErrorCode
{
    TypeMismatch,
    PurityViolation,
    UnknownIdentifier,
    TargetException,
    CaptureMissing,
};

std::string_view to_string(EvalErrorCode code);

struct EvalError
{
    EvalErrorCode code;
    std::string detail;
};

enum class Outcome
{
    Pass,
    Fail,
    Error,
};

std::string_view to_string(Outcome o);

struct Verdict
{
    Outcome outcome = Outcome::Pass;
    std::optional<EvalErrorCode> code; // iff Error
    std::string detail;

    static Verdict pass() { return {}; }
    static Verdict fail() { return {Outcome::Fail, std::nullopt, {}}; }
    static Verdict error(const EvalError &e) { return {Outcome::Error, e.code, e.detail}; }
};

/// An entry-time value, or the reason it could not be taken.
using Captured = std::variant<mdwp::ValueMirror, EvalError>;

struct EvalEnv
{
    std::optional<mdwp::ObjectRef> self;
    std::map<std::string, mdwp::ValueMirror> params;
    std::optional<mdwp::ValueMirror> result;

    // Exit side: capture chains of the clause and their entry-time values.
    const ocl::PreChains *chains = nullptr;
    const std::vector<Captured> *slots = nullptr;
    // Entry side: `@pre` reads through to the live value.
    bool capturing = false;
};

/// Mirror-backed OCL evaluation with dynamic type checks. Sequences are
/// fetched on demand and compared element-wise.
class Evaluator
{
  public:
    explicit Evaluator(TargetAccess &target) : target_(target) {}

    /// Evaluates a Boolean clause. Never throws EvalError; target loss
    /// (mdwp::SessionDead) propagates.
    Verdict check(const ocl::Expr &e, const EvalEnv &env);

    /// Any value. Throws EvalError.
    mdwp::ValueMirror eval(const ocl::Expr &e, const EvalEnv &env);

    /// Entry-time values for every slot of `chains`.
    std::vector<Captured> capture(const ocl::PreChains &chains, const EvalEnv &env);

    /// Brackets every check() with heap digests and counts disagreements.
    void set_verify_purity(bool on) { verify_purity_ = on; }
    std::size_t digest_checks() const { return digest_checks_; }
    std::size_t digest_mismatches() const { return digest_mismatches_; }

  private:
    using Scope = std::vector<std::pair<std::string, mdwp::ValueMirror>>;

    mdwp::ValueMirror eval(const ocl::Expr &e, const EvalEnv &env, Scope &scope);
    mdwp::ValueMirror eval_call(const ocl::Call &c, const EvalEnv &env, Scope &scope);
    mdwp::ValueMirror eval_field(const ocl::FieldAccess &f, const EvalEnv &env, Scope &scope);
    mdwp::ValueMirror eval_ident(const std::string &name, const EvalEnv &env, const Scope &scope);
    mdwp::ValueMirror eval_binary(const ocl::Binary &b, const EvalEnv &env, Scope &scope);
    mdwp::ValueMirror eval_collection(const ocl::CollectionOp &c, const EvalEnv &env, Scope &scope);
    bool eval_bool(const ocl::Expr &e, const EvalEnv &env, Scope &scope, std::string_view what);
    std::vector<mdwp::WireValue> elements(const mdwp::ValueMirror &v, std::string_view what);
    bool equal(const mdwp::ValueMirror &a, const mdwp::ValueMirror &b, int depth = 0);
    const mdwp::ObjectRef &self(const EvalEnv &env) const;

    TargetAccess &target_;
    bool verify_purity_ = false;
    std::size_t digest_checks_ = 0;
    std::size_t digest_mismatches_ = 0;
};

} // namespace auditor
