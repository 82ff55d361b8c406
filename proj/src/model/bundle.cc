#include "goalrec/model/bundle.h"

#include "goalrec/util/errors.h"

#include <fstream>
#include <sstream>

namespace goalrec::model {

LoadedBundle load_bundle(const BundleText &text, const GroundingOptions &options) {
    LoadedBundle bundle;
    bundle.domain = parse_domain(text.domain);
    bundle.problem = parse_problem(text.problem, bundle.domain);

    std::vector<Atom> hyp_atoms;
    std::istringstream lines(text.hyps);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == ';')
            continue;
        try {
            for (const std::string &atom : split_fluents(line))
                hyp_atoms.push_back(parse_ground_atom(atom, bundle.domain, bundle.problem));
        } catch (const ParseError &e) {
            throw ParseError(std::string("hyps.dat: ") + e.what(), number);
        }
    }

    auto task = std::make_shared<PlanningTask>(
        ground(bundle.domain, bundle.problem, options, hyp_atoms));
    RecognitionProblem &rec = bundle.recognition;
    rec.hyps = parse_hypotheses(text.hyps, *task);
    if (rec.hyps.goals.empty())
        throw ParseError("hyps.dat holds no hypotheses");
    if (text.obs)
        rec.obs = parse_observations(*text.obs, *task);
    if (text.real_hyp)
        rec.hyps.hidden = resolve_hidden_goal(*text.real_hyp, rec.hyps, *task);
    rec.task = std::move(task);
    return bundle;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file " + path.string());
    out << content;
}

BundleText read_bundle_dir(const std::filesystem::path &dir) {
    if (!std::filesystem::is_directory(dir))
        throw ParseError("bundle directory not found: " + dir.string());
    BundleText text;
    text.domain = read_text_file(dir / "domain.pddl");
    text.problem = read_text_file(dir / "template.pddl");
    text.hyps = read_text_file(dir / "hyps.dat");
    if (std::filesystem::exists(dir / "obs.dat"))
        text.obs = read_text_file(dir / "obs.dat");
    if (std::filesystem::exists(dir / "real_hyp.dat"))
        text.real_hyp = read_text_file(dir / "real_hyp.dat");
    return text;
}

void write_bundle_dir(const std::filesystem::path &dir, const BundleText &text) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "domain.pddl", text.domain);
    write_text_file(dir / "template.pddl", text.problem);
    write_text_file(dir / "hyps.dat", text.hyps);
    if (text.obs)
        write_text_file(dir / "obs.dat", *text.obs);
    if (text.real_hyp)
        write_text_file(dir / "real_hyp.dat", *text.real_hyp);
}

}  // namespace goalrec::model
