"""Project-disjoint train/validation/test splits."""

import json
import random

SPLIT_NAMES = ("train", "val", "test")
DEFAULT_RATIOS = (0.90, 0.05, 0.05)


class TooFewProjects(ValueError):
    """Fewer than three projects: a disjoint 3-way split is impossible."""


def split_corpus(records, ratios=DEFAULT_RATIOS, seed=0):
    """Assign whole projects to train/val/test by method-count targets.

    Projects are placed largest-first (ties shuffled by seed) into the
    split with the largest remaining method-count deficit, which keeps
    realized fractions within ~2pp of the targets for non-degenerate
    corpora. Returns {split name: set of method ids}.
    """
    if len(ratios) != 3 or abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("ratios must be three fractions summing to 1")
    sizes = {}
    members = {}
    for rec in records:
        sizes[rec.project] = sizes.get(rec.project, 0) + 1
        members.setdefault(rec.project, []).append(rec.id)
    projects = sorted(sizes)
    if len(projects) < 3:
        raise TooFewProjects("%d project(s), need at least 3" % len(projects))

    rng = random.Random("split|%s" % seed)
    rng.shuffle(projects)
    projects.sort(key=lambda p: -sizes[p])

    total = sum(sizes.values())
    assigned = {name: 0 for name in SPLIT_NAMES}
    project_split = {}
    for proj in projects:
        deficits = [
            (ratios[k] * total - assigned[name], -k, name)
            for k, name in enumerate(SPLIT_NAMES)
        ]
        _, _, best = max(deficits)
        project_split[proj] = best
        assigned[best] += sizes[proj]

    # Guarantee every split is nonempty (tiny corpora can starve val/test).
    for k, name in enumerate(SPLIT_NAMES):
        if not any(s == name for s in project_split.values()):
            donor = max(
                (p for p, s in project_split.items() if _count(project_split, s) > 1),
                key=lambda p: -sizes[p],
            )
            project_split[donor] = name

    id_sets = {name: set() for name in SPLIT_NAMES}
    for proj, name in project_split.items():
        id_sets[name].update(members[proj])
    return id_sets, project_split


def _count(project_split, name):
    return sum(1 for s in project_split.values() if s == name)


def write_split(path, id_sets, project_split):
    payload = {
        "projects": {p: s for p, s in sorted(project_split.items())},
        "method_ids": {name: sorted(ids) for name, ids in id_sets.items()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_split(path):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    id_sets = {name: set(ids) for name, ids in payload["method_ids"].items()}
    return id_sets, payload["projects"]
