#include "expr.h"

#include <cctype>
#include <memory>

#include "pqseq.h"

namespace alg {

namespace {

struct Node {
    char op;  // '+','-','*','/','^','u' unary minus,'n' number,'v' name,'g' gsum
    mpz_class num;
    std::string name;
    std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& src) : s(src) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    NodePtr expr() {
        NodePtr left = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return left;
            ++pos;
            NodePtr right = term();
            NodePtr n = std::make_unique<Node>();
            n->op = c;
            n->a = std::move(left);
            n->b = std::move(right);
            left = std::move(n);
        }
    }
    NodePtr term() {
        NodePtr left = factor();
        while (true) {
            char c = peek();
            if (c != '*' && c != '/') return left;
            ++pos;
            NodePtr right = factor();
            NodePtr n = std::make_unique<Node>();
            n->op = c;
            n->a = std::move(left);
            n->b = std::move(right);
            left = std::move(n);
        }
    }
    NodePtr factor() {
        if (eat('-')) {
            NodePtr n = std::make_unique<Node>();
            n->op = 'u';
            n->a = factor();
            return n;
        }
        NodePtr base = atom();
        if (eat('^')) {
            NodePtr n = std::make_unique<Node>();
            n->op = '^';
            n->a = std::move(base);
            n->b = factor();  // exponents may carry a sign or parentheses
            return n;
        }
        return base;
    }
    NodePtr atom() {
        skip();
        if (pos >= s.size()) fail("BadExpression", "unexpected end of expression");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = expr();
            if (!eat(')')) fail("BadExpression", "missing closing parenthesis");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            NodePtr n = std::make_unique<Node>();
            n->op = 'n';
            n->num = mpz_class(s.substr(start, pos - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (eat('(')) {
                if (name != "gsum") fail("BadExpression", "unknown function " + name);
                NodePtr n = std::make_unique<Node>();
                n->op = 'g';
                n->a = expr();
                if (!eat(',')) fail("BadExpression", "gsum needs two arguments");
                n->b = expr();
                if (!eat(')')) fail("BadExpression", "missing closing parenthesis");
                return n;
            }
            NodePtr n = std::make_unique<Node>();
            n->op = 'v';
            n->name = std::move(name);
            return n;
        }
        fail("BadExpression", std::string("unexpected character '") + c + "'");
    }
};

long long eval_int(const Node& n, const ExprEnv& env) {
    switch (n.op) {
        case 'n':
            if (!n.num.fits_slong_p()) fail("BadExpression", "integer exponent too large");
            return n.num.get_si();
        case 'v':
            if (n.name == "k") {
                if (!env.k) fail("MissingParam", "k is not bound here");
                return *env.k;
            }
            fail("BadExpression", "exponents may involve only integers and k");
        case 'u':
            return -eval_int(*n.a, env);
        case '+':
            return eval_int(*n.a, env) + eval_int(*n.b, env);
        case '-':
            return eval_int(*n.a, env) - eval_int(*n.b, env);
        case '*':
            return eval_int(*n.a, env) * eval_int(*n.b, env);
        default:
            fail("BadExpression", "exponents may involve only +, -, *, integers and k");
    }
}

FE eval_fe(const Node& n, const ExprEnv& env) {
    const FieldDesc& fd = env.fd;
    switch (n.op) {
        case 'n':
            return FE::from_mpq(fd, mpq_class(n.num));
        case 'v': {
            if (n.name == "k") {
                if (!env.k) fail("MissingParam", "k is not bound here");
                return FE::from_int(fd, *env.k);
            }
            if (n.name == "th" || n.name == "i") {
                RootsOfUnity r = roots_of_unity(fd);
                const std::optional<FE>& v = n.name == "th" ? r.theta : r.i;
                if (!v)
                    fail("FieldRequirement",
                         "the working field has no value for " + n.name);
                return *v;
            }
            auto it = env.params.find(n.name);
            if (it == env.params.end()) fail("MissingParam", "parameter " + n.name + " not supplied");
            return it->second;
        }
        case 'u':
            return -eval_fe(*n.a, env);
        case '+':
            return eval_fe(*n.a, env) + eval_fe(*n.b, env);
        case '-':
            return eval_fe(*n.a, env) - eval_fe(*n.b, env);
        case '*':
            return eval_fe(*n.a, env) * eval_fe(*n.b, env);
        case '/':
            return eval_fe(*n.a, env) / eval_fe(*n.b, env);
        case '^': {
            FE base = eval_fe(*n.a, env);
            long long e = eval_int(*n.b, env);
            if (e < 0) return fe_pow(base.inv(), -e);
            return fe_pow(base, e);
        }
        case 'g': {
            FE base = eval_fe(*n.a, env);
            long long kk = eval_int(*n.b, env);
            if (kk < 0) fail("BadExpression", "gsum needs a nonnegative count");
            FE acc = FE::zero(fd);
            FE p = FE::one(fd);
            for (long long j = 0; j <= kk; ++j) {
                acc = acc + p;
                p = p * base;
            }
            return acc;
        }
        default:
            fail("BadExpression", "malformed expression tree");
    }
}

}  // namespace

FE eval_expr(const std::string& src, const ExprEnv& env) {
    Parser p(src);
    NodePtr root = p.expr();
    p.skip();
    if (p.pos != src.size()) fail("BadExpression", "trailing characters in expression");
    return eval_fe(*root, env);
}

}  // namespace alg
