#include "metastack/dataset.hpp"

#include "metastack/errors.hpp"
#include "metastack/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace metastack {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty())
        return std::nullopt;
    if (s.front() == '+')
        s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

struct Column {
    std::string name;
    std::vector<std::optional<std::string>> cells; // nullopt = missing
};

double impute_value(std::vector<double> present, Imputation how) {
    if (present.empty() || how == Imputation::zero)
        return 0.0;
    if (how == Imputation::mean) {
        double sum = 0.0;
        for (double v : present)
            sum += v;
        return sum / static_cast<double>(present.size());
    }
    std::sort(present.begin(), present.end());
    const std::size_t n = present.size();
    return n % 2 == 1 ? present[n / 2] : 0.5 * (present[n / 2 - 1] + present[n / 2]);
}

} // namespace

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(class_names.size(), 0);
    for (int y : labels)
        if (y >= 0 && static_cast<std::size_t>(y) < counts.size())
            ++counts[static_cast<std::size_t>(y)];
    return counts;
}

void Dataset::validate() const {
    const std::size_t n = labels.size();
    if (n < 2)
        throw EmptyDataset("need at least 2 instances, got " + std::to_string(n));
    if (features.cols() < 1)
        throw EmptyDataset("need at least 1 feature");
    if (features.rows() != n || instance_ids.size() != n)
        throw MalformedInput("feature rows, labels and instance ids differ in length");
    if (feature_names.size() != features.cols())
        throw MalformedInput("feature name count does not match feature width");
    if (class_names.size() < 2)
        throw SingleClassDataset(std::to_string(class_names.size()) + " class(es)");
    for (int y : labels)
        if (y < 0 || y >= n_classes())
            throw MalformedInput("label out of range: " + std::to_string(y));
    for (std::size_t c : class_counts())
        if (c == 0)
            throw MalformedInput("a declared class has no instances");
    std::unordered_set<std::string> seen;
    for (const auto& id : instance_ids)
        if (!seen.insert(id).second)
            throw MalformedInput("duplicate instance id: " + id);
    for (double v : features.data())
        if (!std::isfinite(v))
            throw MalformedInput("non-finite feature value");
}

std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF")
        text.remove_prefix(3);

    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && trim(record.front()).empty();
        if (!blank)
            records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started && trim(field).empty()) {
            field.clear();
            in_quotes = true;
            field_started = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\n') {
            end_record();
        } else if (c == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n')
                continue;
            end_record();
        } else {
            field += c;
        }
    }
    if (in_quotes)
        throw MalformedInput("unterminated quoted field");
    if (!field.empty() || !record.empty() || field_started)
        end_record();
    return records;
}

Dataset parse_dataset(std::string_view text, const std::string& target_column,
                      const IngestionOptions& options) {
    const auto records = parse_delimited(text, options.delimiter);
    if (records.empty())
        throw EmptyDataset("no header row");

    const auto& header = records.front();
    const std::size_t width = header.size();
    for (std::size_t r = 1; r < records.size(); ++r)
        if (records[r].size() != width)
            throw MalformedInput("row " + std::to_string(r) + " has " +
                                 std::to_string(records[r].size()) + " fields, expected " +
                                 std::to_string(width));

    std::optional<std::size_t> target_idx;
    std::optional<std::size_t> id_idx;
    for (std::size_t c = 0; c < width; ++c) {
        const auto name = trim(header[c]);
        if (name == target_column && !target_idx)
            target_idx = c;
        if (!options.id_column.empty() && name == options.id_column && !id_idx)
            id_idx = c;
    }
    if (!target_idx)
        throw MissingTargetColumn(target_column);
    if (!options.id_column.empty() && !id_idx)
        throw MalformedInput("id column not found: '" + options.id_column + "'");

    const std::set<std::string, std::less<>> missing(options.missing_tokens.begin(),
                                                     options.missing_tokens.end());
    auto is_missing = [&](const std::string& cell) {
        return missing.contains(trim(cell));
    };

    // Keep rows that carry a target value; remember their original row number.
    std::vector<std::size_t> kept;
    for (std::size_t r = 1; r < records.size(); ++r)
        if (!is_missing(records[r][*target_idx]))
            kept.push_back(r);
    if (kept.empty())
        throw EmptyDataset("no rows with a target value");

    Dataset ds;
    ds.name = options.name;

    std::unordered_map<std::string, int> label_of;
    for (std::size_t r : kept) {
        std::string label(trim(records[r][*target_idx]));
        auto [it, inserted] = label_of.try_emplace(label, static_cast<int>(ds.class_names.size()));
        if (inserted)
            ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
    }
    if (ds.class_names.size() < 2)
        throw SingleClassDataset("target '" + target_column + "' has " +
                                 std::to_string(ds.class_names.size()) + " distinct value");

    for (std::size_t r : kept) {
        if (id_idx)
            ds.instance_ids.emplace_back(trim(records[r][*id_idx]));
        else
            ds.instance_ids.push_back(std::to_string(r - 1));
    }

    // Encode feature columns into a column-major staging area.
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < width; ++c) {
        if (c == *target_idx || (id_idx && c == *id_idx))
            continue;
        const std::string name(trim(header[c]));

        bool numeric = true;
        std::vector<std::optional<double>> values;
        values.reserve(kept.size());
        for (std::size_t r : kept) {
            const auto& cell = records[r][c];
            if (is_missing(cell)) {
                values.emplace_back();
                continue;
            }
            auto v = parse_number(cell);
            if (!v) {
                numeric = false;
                break;
            }
            values.push_back(v);
        }

        if (numeric) {
            std::vector<double> present;
            for (const auto& v : values)
                if (v)
                    present.push_back(*v);
            const double fill = impute_value(std::move(present), options.imputation);
            std::vector<double> col;
            col.reserve(values.size());
            for (const auto& v : values)
                col.push_back(v.value_or(fill));
            columns.push_back(std::move(col));
            ds.feature_names.push_back(name);
            continue;
        }

        // Categorical: one-hot over the lexicographically sorted categories;
        // missing cells take the most frequent category (ties -> smallest).
        std::map<std::string, std::size_t> freq;
        for (std::size_t r : kept)
            if (!is_missing(records[r][c]))
                ++freq[std::string(trim(records[r][c]))];
        std::string mode;
        std::size_t best = 0;
        for (const auto& [category, count] : freq)
            if (count > best) {
                best = count;
                mode = category;
            }
        for (const auto& [category, count] : freq) {
            std::vector<double> col;
            col.reserve(kept.size());
            for (std::size_t r : kept) {
                const auto& cell = records[r][c];
                const std::string value = is_missing(cell) ? mode : std::string(trim(cell));
                col.push_back(value == category ? 1.0 : 0.0);
            }
            columns.push_back(std::move(col));
            ds.feature_names.push_back(name + "=" + category);
        }
    }
    if (columns.empty())
        throw EmptyDataset("no feature columns");

    ds.features = Matrix(kept.size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < kept.size(); ++i)
            ds.features(i, j) = columns[j][i];

    ds.validate();
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path, const std::string& target_column,
                     const IngestionOptions& options) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw FileNotFound(path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FileNotFound(path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();

    IngestionOptions opts = options;
    if (opts.name.empty())
        opts.name = path.stem().string();
    return parse_dataset(buffer.str(), target_column, opts);
}

std::vector<std::size_t> FoldAssignment::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (fold_of[i] != fold)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldAssignment::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (fold_of[i] == fold)
            out.push_back(i);
    return out;
}

FoldAssignment stratified_kfold(const std::vector<int>& labels, int n_classes, int k,
                                std::int64_t seed) {
    if (k < 2)
        throw KTooSmall(k);
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(n_classes));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i];
        if (y < 0 || y >= n_classes)
            throw MalformedInput("label out of range: " + std::to_string(y));
        by_class[static_cast<std::size_t>(y)].push_back(i);
    }
    std::size_t smallest = labels.size();
    for (const auto& members : by_class)
        smallest = std::min(smallest, members.size());
    if (static_cast<std::size_t>(k) > smallest)
        throw KTooLarge(k, static_cast<int>(smallest));

    FoldAssignment folds;
    folds.k = k;
    folds.seed = seed;
    folds.fold_of.assign(labels.size(), -1);

    // Shuffle each class, then deal round-robin. The starting fold carries
    // over between classes so that fold sizes stay balanced overall.
    Rng rng(static_cast<std::uint64_t>(seed));
    std::size_t offset = 0;
    for (auto& members : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (std::size_t j = 0; j < members.size(); ++j)
            folds.fold_of[members[j]] = static_cast<int>((offset + j) % static_cast<std::size_t>(k));
        offset = (offset + members.size()) % static_cast<std::size_t>(k);
    }
    return folds;
}

FoldAssignment stratified_kfold(const Dataset& ds, int k, std::int64_t seed) {
    return stratified_kfold(ds.labels, ds.n_classes(), k, seed);
}

} // namespace metastack
