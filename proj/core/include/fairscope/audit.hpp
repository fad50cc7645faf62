#pragma once

#include <string>

#include "fairscope/config.hpp"
#include "fairscope/data.hpp"
#include "fairscope/report.hpp"

namespace fairscope {

/// Reads cfg.input with the configured schema and scale. Errors carry the
/// file path; a missing file raises InputUnavailable.
AuditTable load_input(const AuditConfig& cfg);

/// Group pair from the config, or the table's two labels in byte order.
GroupPartition resolve_partition(const AuditTable& table, const AuditConfig& cfg);

/// Full staged audit: ground-truth reliability when rater columns exist,
/// feature screen, prediction-stage and decision-stage metrics. A metric that
/// cannot be computed is reported as undefined with the reason.
AuditReport run_audit(const AuditTable& table, const AuditConfig& cfg);

/// Adverse impact at every configured select rate.
SweepReport run_sweep(const AuditTable& table, const AuditConfig& cfg);

/// Feature-stage metrics only.
AuditReport run_screen(const AuditTable& table, const AuditConfig& cfg);

}  // namespace fairscope
