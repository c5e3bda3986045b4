#include "binform/family_io.hpp"

#include <stdexcept>

namespace binform {

namespace {

unsigned parse_degree_key(const std::string& key) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("family: degree key \"" + key + "\" is not a decimal integer");
    unsigned long d;
    try {
        d = std::stoul(key);
    } catch (const std::exception&) {
        throw std::invalid_argument("family: degree key \"" + key + "\" is out of range");
    }
    if (d < 3) throw std::invalid_argument("family: degree " + key + " is below 3");
    if (d > 1000000) throw std::invalid_argument("family: degree " + key + " is out of range");
    return static_cast<unsigned>(d);
}

Int parse_coefficient(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Int(v.get<std::uint64_t>());
        return Int(v.get<std::int64_t>());
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        // GMP's string constructor skips whitespace, so shape-check first.
        std::size_t digits = s.find_first_not_of("0123456789", s.starts_with("-") ? 1 : 0);
        if (s.empty() || s == "-" || digits != std::string::npos)
            throw std::invalid_argument("family entry " + where + ": \"" + s +
                                        "\" is not a decimal integer");
        return Int(s, 10);
    }
    throw std::invalid_argument("family entry " + where +
                                ": coefficient must be an integer or a decimal string");
}

}  // namespace

Family parse_family(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("family: document must be an object");
    Family fam;
    for (const auto& [key, pairs] : doc.items()) {
        unsigned d = parse_degree_key(key);
        if (!pairs.is_array())
            throw std::invalid_argument("family degree " + key + ": value must be an array of pairs");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& p = pairs[i];
            std::string where = key + "[" + std::to_string(i) + "]";
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("family entry " + where + ": expected a pair [a, b]");
            Int a = parse_coefficient(p[0], where);
            Int b = parse_coefficient(p[1], where);
            if (a == 0 || b == 0)
                throw std::invalid_argument("family entry " + where + ": zero coefficient");
            fam.add(d, a, b);
        }
    }
    if (fam.empty()) throw std::invalid_argument("family: no coefficient pairs given");
    return fam;
}

Family parse_family_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("family: malformed document: ") + e.what());
    }
    return parse_family(doc);
}

nlohmann::ordered_json family_json(const Family& fam) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [d, pairs] : fam.entries()) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [a, b] : pairs) {
            nlohmann::ordered_json pair = nlohmann::ordered_json::array();
            for (const Int* c : {&a, &b}) {
                if (fits_long(*c))
                    pair.push_back(to_long(*c));
                else
                    pair.push_back(c->get_str());
            }
            arr.push_back(std::move(pair));
        }
        doc[std::to_string(d)] = std::move(arr);
    }
    return doc;
}

}  // namespace binform
