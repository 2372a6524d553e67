#include "tempsep/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tempsep {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) {
    fail(ErrorKind::parse_error, what);
}

ordered_json parse_json(const std::string& text, const char* what) {
    ordered_json doc = ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded()) parse_fail(std::string(what) + ": not valid JSON");
    return doc;
}

}  // namespace

const char* kReportSchemaLine = "# tempsep-report v1";
const char* kReportHeaderLine =
    "dataset,vertices,temporal_arcs,TS,d,SL,V_sep,avg_int,paths,paths_exact,time_s,mode,seed";

std::string write_instance(const Instance& instance) {
    const auto& g = instance.graph;
    ordered_json doc;
    doc["version"] = 1;
    doc["T"] = g.horizon();
    doc["vertices"] = g.vertex_names();
    ordered_json arcs = ordered_json::array();
    for (const auto& arc : g.arcs()) {
        ordered_json rec;
        rec["u"] = arc.from;
        rec["v"] = arc.to;
        rec["times"] = arc.times;
        arcs.push_back(std::move(rec));
    }
    doc["arcs"] = std::move(arcs);
    doc["source"] = instance.source;
    doc["target"] = instance.target;
    doc["deadline"] = instance.deadline;
    return doc.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
    ordered_json doc = parse_json(text, "instance");
    try {
        if (doc.at("version").get<int>() != 1) parse_fail("instance: unsupported version");
        Time horizon = doc.at("T").get<Time>();
        auto names = doc.at("vertices").get<std::vector<std::string>>();
        std::vector<ArcSpec> arcs;
        for (const auto& rec : doc.at("arcs")) {
            ArcSpec spec;
            spec.from = rec.at("u").get<VertexId>();
            spec.to = rec.at("v").get<VertexId>();
            spec.times = rec.at("times").get<std::vector<Time>>();
            arcs.push_back(std::move(spec));
        }
        auto graph = TemporalGraph::build(std::move(names), arcs, horizon);
        return Instance::make(std::move(graph), doc.at("source").get<VertexId>(),
                              doc.at("target").get<VertexId>(), doc.at("deadline").get<Time>());
    } catch (const ordered_json::exception& e) {
        parse_fail(std::string("instance: ") + e.what());
    }
}

Instance load_instance_file(const std::string& path) {
    return parse_instance(read_text_file(path));
}

void save_instance_file(const std::string& path, const Instance& instance) {
    write_text_file(path, write_instance(instance));
}

std::string write_timeline(const TemporalGraph& graph, const SeparatorTimeline& timeline) {
    if (timeline.vertex_count() != graph.vertex_count())
        fail(ErrorKind::bad_timeline, "timeline size does not match the graph");
    ordered_json doc;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        const auto& iv = timeline.at(v);
        if (iv.is_empty())
            doc[graph.name_of(v)] = nullptr;
        else
            doc[graph.name_of(v)] = ordered_json::array({iv.lo(), iv.hi()});
    }
    return doc.dump(2) + "\n";
}

SeparatorTimeline parse_timeline(const TemporalGraph& graph, const std::string& text) {
    ordered_json doc = parse_json(text, "timeline");
    if (!doc.is_object()) parse_fail("timeline: expected an object");
    SeparatorTimeline timeline(graph.vertex_count());
    size_t assigned = 0;
    for (const auto& [name, value] : doc.items()) {
        auto v = graph.find_vertex(name);
        if (!v) parse_fail("timeline: unknown vertex '" + name + "'");
        ++assigned;
        if (value.is_null()) continue;
        if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
            !value[1].is_number_integer())
            parse_fail("timeline: interval of '" + name + "' must be [lo, hi] or null");
        Time lo = value[0].get<Time>();
        Time hi = value[1].get<Time>();
        if (lo < 1 || lo > hi || hi > graph.horizon())
            fail(ErrorKind::bad_interval,
                 "timeline: interval of '" + name + "' outside [1, T]");
        timeline.set(*v, Interval::closed(lo, hi));
    }
    if (assigned != static_cast<size_t>(graph.vertex_count()))
        parse_fail("timeline: must assign every vertex exactly once");
    return timeline;
}

SeparatorTimeline load_timeline_file(const TemporalGraph& graph, const std::string& path) {
    return parse_timeline(graph, read_text_file(path));
}

void save_timeline_file(const std::string& path, const TemporalGraph& graph,
                        const SeparatorTimeline& timeline) {
    write_text_file(path, write_timeline(graph, timeline));
}

std::string format_run_record(const RunRecord& record) {
    std::ostringstream out;
    char avg[32];
    std::snprintf(avg, sizeof avg, "%.2f", record.avg_interval);
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", record.time_seconds);
    out << record.dataset << ',' << record.vertices << ',' << record.temporal_arcs << ','
        << record.horizon << ',' << record.deadline << ',' << record.separator_length << ','
        << record.separator_vertices << ',' << avg << ',' << record.path_count << ','
        << (record.path_count_exact ? "true" : "false") << ',' << secs << ',' << record.mode
        << ',' << record.seed;
    return out.str();
}

void append_run_record(const std::string& path, const RunRecord& record) {
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) fail(ErrorKind::missing_file, "cannot open report file " + path);
    if (fresh) out << kReportSchemaLine << '\n' << kReportHeaderLine << '\n';
    out << format_run_record(record) << '\n';
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::missing_file, path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::missing_file, "cannot open " + path);
    out << content;
}

}  // namespace tempsep
