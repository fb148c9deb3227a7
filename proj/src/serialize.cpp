#include "patcalc/serialize.hpp"

#include "patcalc/syntax.hpp"

namespace patcalc {

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }
std::string quoted(const Term& m) { return quoted(to_string(m)); }
std::string quoted(const Pattern& p) { return quoted(to_string(p)); }

}  // namespace

std::string to_sexp(const DevProof& d) {
    std::string out = "(" + to_string(d->rule);
    switch (d->rule) {
        case DevRule::DRefl:
            out += " " + quoted(d->source);
            break;
        case DevRule::DAbs:
            out += " " + quoted(*d->binder) + " " + to_sexp(d->body);
            break;
        case DevRule::DApp:
            out += " " + to_sexp(d->fun) + " " + to_sexp(d->arg);
            break;
        case DevRule::DBeta:
            out += " " + quoted(*d->binder) + " " + quoted(to_string(d->witness)) + " " + to_sexp(d->body);
            for (const auto& [x, p] : d->subst.per_variable) out += " (" + x + " " + to_sexp(p) + ")";
            break;
    }
    return out + ")";
}

std::string to_sexp(const IntDevProof& d) {
    std::string out = "(" + to_string(d->rule);
    if (d->index) out += " " + quoted(*d->index);
    switch (d->rule) {
        case IntRule::IRefl:
        case IntRule::PConstShort:
            out += " " + quoted(d->source);
            break;
        case IntRule::IAbs:
            out += " " + quoted(*d->binder) + " " + to_sexp(d->dev_left);
            break;
        case IntRule::IApp1:
        case IntRule::PCDataNo1:
            out += " " + to_sexp(d->int_left) + " " + to_sexp(d->dev_right);
            break;
        case IntRule::IApp2:
            out += " " + quoted(*d->binder) + " " + to_sexp(d->dev_left) + " " + to_sexp(d->int_right);
            break;
        case IntRule::PMatch:
            out += " " + to_sexp(d->dev_left);
            break;
        case IntRule::PConst:
        case IntRule::PNoCData:
            out += " " + to_sexp(d->int_left);
            break;
        case IntRule::PCDataNo2:
            out += " " + to_sexp(d->dev_left) + " " + to_sexp(d->int_right);
            break;
        case IntRule::PCDataNo3:
            out += " " + to_sexp(d->dev_left) + " " + to_sexp(d->dev_right);
            break;
    }
    return out + ")";
}

std::string to_sexp(const StdProof& d) {
    std::string out = "(" + to_string(d->rule);
    switch (d->rule) {
        case StdRule::StdVar:
        case StdRule::StdConst:
        case StdRule::StdHead:
            out += " " + quoted(d->terms.front());
            if (d->first) out += " " + to_sexp(d->first);
            break;
        case StdRule::StdAbs:
            out += " " + quoted(*d->binder) + " " + to_sexp(d->first);
            break;
        case StdRule::StdApp:
            out += " " + to_sexp(d->first) + " " + to_sexp(d->second);
            break;
    }
    return out + ")";
}

nlohmann::json to_json(const Substitution& s) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [x, m] : s.bindings()) out[x] = to_string(m);
    return out;
}

nlohmann::json to_json(const DevProof& d) {
    nlohmann::json j{{"rule", to_string(d->rule)}, {"source", to_string(d->source)}, {"target", to_string(d->target)}};
    if (d->binder) j["binder"] = to_string(*d->binder);
    if (d->body) j["body"] = to_json(d->body);
    if (d->fun) j["fun"] = to_json(d->fun);
    if (d->arg) j["arg"] = to_json(d->arg);
    if (d->rule == DevRule::DBeta) {
        j["witness"] = to_json(d->witness);
        nlohmann::json sd = nlohmann::json::object();
        for (const auto& [x, p] : d->subst.per_variable) sd[x] = to_json(p);
        j["subst"] = std::move(sd);
    }
    return j;
}

nlohmann::json to_json(const IntDevProof& d) {
    nlohmann::json j{{"rule", to_string(d->rule)}, {"source", to_string(d->source)}, {"target", to_string(d->target)}};
    if (d->index) j["index"] = to_string(*d->index);
    if (d->binder) j["binder"] = to_string(*d->binder);
    if (d->int_left) j["int_left"] = to_json(d->int_left);
    if (d->int_right) j["int_right"] = to_json(d->int_right);
    if (d->dev_left) j["dev_left"] = to_json(d->dev_left);
    if (d->dev_right) j["dev_right"] = to_json(d->dev_right);
    return j;
}

nlohmann::json to_json(const StdProof& d) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : d->terms) terms.push_back(to_string(t));
    nlohmann::json j{{"rule", to_string(d->rule)}, {"terms", std::move(terms)}};
    if (d->binder) j["binder"] = to_string(*d->binder);
    if (d->first) j["first"] = to_json(d->first);
    if (d->second) j["second"] = to_json(d->second);
    return j;
}

nlohmann::json to_json(const HeadJustification& h) {
    nlohmann::json j{{"rule", to_string(h.rule)}, {"position", to_string(h.position())}};
    if (h.rule == HeadRule::HBeta || h.rule == HeadRule::Pat2) j["witness"] = to_json(h.witness);
    if (h.inner) j["inner"] = to_json(*h.inner);
    return j;
}

nlohmann::json to_json(const StepRecord& s) {
    return {{"source", to_string(s.source)}, {"position", to_string(s.position)}, {"result", to_string(s.result)}};
}

nlohmann::json to_json(const HSplit& s) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : s.head_steps) steps.push_back(to_json(st));
    return {{"head_steps", std::move(steps)}, {"mid", to_string(s.mid)}, {"internal", to_json(s.internal)}};
}

}  // namespace patcalc
