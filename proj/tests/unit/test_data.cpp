#include <gtest/gtest.h>

#include <sstream>

#include "fairscope/csv.hpp"
#include "fairscope/data.hpp"
#include "fairscope/error.hpp"

using namespace fairscope;

namespace {

ColumnSchema short_schema() {
  ColumnSchema s;
  s.subject_column = "id";
  s.group_column = "gender";
  s.truth_column = "true";
  s.pred_column = "pred";
  return s;
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidReport;
}

}  // namespace

TEST(Csv, QuotedFieldsAndCrlf) {
  const auto rows = csv::parse("a,\"b,c\",\"d\"\"e\"\r\n1,2,3\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][1], "b,c");
  EXPECT_EQ(rows[0][2], "d\"e");
  EXPECT_EQ(rows[1][2], "3");
}

TEST(Csv, UnterminatedQuoteIsMalformed) {
  EXPECT_EQ(kind_of([] { csv::parse("a,\"b\n"); }), ErrorKind::MalformedCsv);
}

TEST(Csv, EscapeRoundTrip) {
  std::ostringstream out;
  csv::write_row(out, {"plain", "with,comma", "q\"uote", ""});
  const auto rows = csv::parse(out.str());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (csv::Row{"plain", "with,comma", "q\"uote", ""}));
}

TEST(LoadAuditTable, FourRowTable) {
  const auto t = load_audit_table("id,gender,true,pred\n1,w,3,4\n2,w,5,5\n3,m,1,2\n4,m,7,6.5\n", short_schema(),
                                  ScoreScale{});
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.records[3].subject_id, "4");
  EXPECT_DOUBLE_EQ(t.records[3].y_pred, 6.5);
  EXPECT_EQ(t.group_labels(), (std::vector<std::string>{"m", "w"}));
}

TEST(LoadAuditTable, NonNumericScoreNamesRowAndColumn) {
  try {
    load_audit_table("id,gender,true,pred\n1,w,3,4\n2,m,abc,4\n", short_schema(), ScoreScale{});
    FAIL();
  } catch (const CellError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonNumericScore);
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), "true");
  }
}

TEST(LoadAuditTable, OutOfScale) {
  EXPECT_EQ(kind_of([] { load_audit_table("id,gender,true,pred\n1,w,9.0,4\n", short_schema(), ScoreScale{}); }),
            ErrorKind::OutOfScale);
}

TEST(LoadAuditTable, MissingColumnAndDuplicates) {
  EXPECT_EQ(kind_of([] { load_audit_table("id,gender,true\n1,w,3\n", short_schema(), ScoreScale{}); }),
            ErrorKind::MissingColumn);
  EXPECT_EQ(kind_of([] { load_audit_table("id,gender,true,pred\n1,w,3,3\n1,m,3,3\n", short_schema(), ScoreScale{}); }),
            ErrorKind::DuplicateSubjectId);
  EXPECT_EQ(kind_of([] { load_audit_table("id,gender,true,pred\n1,w,,3\n", short_schema(), ScoreScale{}); }),
            ErrorKind::NonNumericScore);
}

TEST(LoadAuditTable, RatersMayBeMissingFeaturesByPrefix) {
  const auto t = load_audit_table(
      "subject_id,group,y_true,y_pred,rater_x,rater_y,f_pitch,note\n"
      "s1,a,3,3,3,,0.5,hello\n"
      "s2,b,4,4,4,5,,world\n",
      ColumnSchema{}, ScoreScale{});
  EXPECT_EQ(t.rater_ids, (std::vector<std::string>{"rater_x", "rater_y"}));
  EXPECT_EQ(t.feature_names, (std::vector<std::string>{"f_pitch"}));
  EXPECT_FALSE(t.records[0].ratings[1].has_value());
  EXPECT_FALSE(t.records[1].features[0].has_value());
}

TEST(LoadAuditTable, CsvRoundTripIsExact) {
  const auto t = load_audit_table(
      "subject_id,group,y_true,y_pred,rater_1,f_1\n"
      "s1,\"a,1\",3.14159265358979,2.718281828459045,1.1,0.1\n"
      "s2,b,4,4,,-3e-7\n",
      ColumnSchema{}, ScoreScale{});
  std::ostringstream out;
  write_audit_csv(out, t);
  const auto back = load_audit_table(out.str(), ColumnSchema{}, ScoreScale{});
  EXPECT_EQ(back, t);
}

TEST(Partition, Basic) {
  const auto t = load_audit_table("id,gender,true,pred\n1,w,3,4\n2,w,5,5\n3,m,1,2\n4,m,7,6.5\n", short_schema(),
                                  ScoreScale{});
  const auto p = partition(t, "w", "m");
  EXPECT_EQ(p.idx_a, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.idx_b, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(p.excluded, 0u);

  const auto swapped = partition(t, "m", "w");
  EXPECT_EQ(swapped.idx_a, p.idx_b);
  EXPECT_EQ(swapped.idx_b, p.idx_a);
}

TEST(Partition, ExcludesOtherLabels) {
  const auto t = load_audit_table("id,gender,true,pred\n1,w,3,4\n2,m,5,5\n3,x,1,2\n", short_schema(), ScoreScale{});
  const auto p = partition(t, "w", "m");
  EXPECT_EQ(p.n_a(), 1u);
  EXPECT_EQ(p.n_b(), 1u);
  EXPECT_EQ(p.excluded, 1u);
}

TEST(Partition, UnknownLabel) {
  const auto t = load_audit_table("id,gender,true,pred\n1,w,3,4\n2,w,5,5\n", short_schema(), ScoreScale{});
  EXPECT_EQ(kind_of([&] { partition(t, "w", "m"); }), ErrorKind::UnknownGroupLabel);
}

TEST(Partition, LabelsAreCaseSensitive) {
  const auto t = load_audit_table("id,gender,true,pred\n1,W,3,4\n2,w,5,5\n", short_schema(), ScoreScale{});
  const auto p = partition(t, "W", "w");
  EXPECT_EQ(p.n_a(), 1u);
  EXPECT_EQ(p.n_b(), 1u);
}

TEST(ParseReal, StrictForms) {
  EXPECT_EQ(parse_real(" 1.5 "), 1.5);
  EXPECT_EQ(parse_real("+2"), 2.0);
  EXPECT_FALSE(parse_real("1.5x"));
  EXPECT_FALSE(parse_real("nan"));
  EXPECT_FALSE(parse_real("inf"));
  EXPECT_FALSE(parse_real(""));
}
