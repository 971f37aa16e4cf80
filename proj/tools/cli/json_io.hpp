#pragma once

#include <initializer_list>
#include <optional>
#include <string>

#include <json.hpp>

#include "lks/lks.hpp"

namespace lks::cli {

using Json = nlohmann::ordered_json;

// Pretty JSON with every number printed as %.17g; non-finite numbers become null.
std::string dump(const Json& j);

// Writes content to path through a temporary file and a rename, or to out when path is empty.
void write_output(const std::string& content, const std::optional<std::string>& path, std::ostream& out);

Json parse_json(const std::string& text);

// Throws InvalidArgument when j has a key outside allowed.
void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);

double get_number(const Json& j, const char* key, const std::string& where);
double get_number_or(const Json& j, const char* key, double fallback, const std::string& where);
Vec3 get_vec3(const Json& j, const char* key, const std::string& where);
Quaternion get_quaternion(const Json& j, const char* key, const std::string& where);

Json to_json(const Vec3& v);
Json to_json(const Quaternion& q);
Json to_json(const CartesianPhaseExt& p);
Json to_json(const KSPhase& k);
Json to_json(const LKSState& s);
Json to_json(const KeplerElements& el);
Json to_json(const ElementExtraction& ex);
Json to_json(const LissajousPlane& p, double omega);
Json to_json(const Equilibrium& e);
Json error_json(const std::exception& e);

}  // namespace lks::cli
