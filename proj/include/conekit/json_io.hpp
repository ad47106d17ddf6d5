#pragma once

#include "conekit/orchestrate.hpp"

#include <json.hpp>

namespace conekit {

using ojson = nlohmann::ordered_json;

ojson json_of_vec(const QVec& v);
QVec vec_of_json(const ojson& j);

ojson json_of_columns(const std::vector<QVec>& columns);
std::vector<QVec> columns_of_json(const ojson& j);

ojson json_of_certificate(const Certificate& cert);
Certificate certificate_of_json(const ojson& j);

ojson json_of_report(const AnalysisReport& report);
AnalysisReport report_of_json(const ojson& j);

/// Machine-check a certificate against its network: closure for figures,
/// exact scaling along the ancestry chain for unbounded rays, exact
/// reconstruction for absorbed reactions.
bool verify_certificate(const ReactionNetwork& net, const Certificate& cert);

}  // namespace conekit
