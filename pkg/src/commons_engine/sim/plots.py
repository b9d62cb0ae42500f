"""Convenience SVG plots for the analysis datasets. CSV is the contract."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analytics import Dataset, PurchaseStats


def plot_chore_shares(dataset: Dataset, out_dir: Path) -> Path:
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.5))
    chores = [r["chore"] for r in dataset.rows]
    left.barh(chores, [r["total_points"] for r in dataset.rows], color="#4878a8")
    left.invert_yaxis()
    left.set_xlabel("total points")
    left.set_title("Points by chore")
    right.barh(chores, [r["mean_points"] for r in dataset.rows], color="#a87848")
    right.invert_yaxis()
    right.set_xlabel("mean points per performance")
    right.set_title("Mean value per performance")
    fig.tight_layout()
    path = out_dir / "chore_shares.svg"
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_specialization(dataset: Dataset, out_dir: Path) -> Path:
    residents = sorted({r["resident"] for r in dataset.rows})
    chores = sorted({r["chore"] for r in dataset.rows})
    months = sorted({r["month"] for r in dataset.rows})
    fig, axes = plt.subplots(1, max(len(residents), 1),
                             figsize=(3.2 * max(len(residents), 1), 4), sharey=True)
    if len(residents) == 1:
        axes = [axes]
    cmap = plt.get_cmap("tab10")
    for ax, resident in zip(axes, residents):
        bottoms = dict.fromkeys(months, 0.0)
        for i, chore in enumerate(chores):
            values = []
            for month in months:
                share = sum(
                    r["share"] for r in dataset.rows
                    if r["resident"] == resident and r["month"] == month
                    and r["chore"] == chore
                )
                values.append(share)
            ax.bar(months, values, bottom=[bottoms[m] for m in months],
                   color=cmap(i % 10), label=chore if resident == residents[0] else None)
            for month, value in zip(months, values):
                bottoms[month] += value
        ax.set_title(resident)
        ax.tick_params(axis="x", rotation=60)
    fig.legend(loc="lower center", ncol=4, fontsize=7)
    fig.suptitle("Monthly chore shares per resident")
    fig.tight_layout(rect=(0, 0.12, 1, 1))
    path = out_dir / "specialization.svg"
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_hearts(dataset: Dataset, out_dir: Path) -> Path:
    fig, ax = plt.subplots(figsize=(10, 4.5))
    residents = sorted({r["resident"] for r in dataset.rows})
    for resident in residents:
        rows = [r for r in dataset.rows if r["resident"] == resident]
        ax.step([r["at"] for r in rows], [r["hearts"] for r in rows],
                where="post", label=resident)
    ax.axhline(dataset.meta.get("baseline", 5.0), color="grey", lw=0.8, ls="--")
    ax.set_ylabel("hearts")
    ax.set_xlabel("time (epoch ms)")
    ax.legend(fontsize=7, ncol=3)
    ax.set_title("Hearts over time")
    fig.tight_layout()
    path = out_dir / "hearts_trajectories.svg"
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_purchases(stats: PurchaseStats, out_dir: Path) -> list[Path]:
    paths = []
    fig, ax = plt.subplots(figsize=(9, 4))
    for account in stats.balances.meta.get("accounts", []):
        rows = [r for r in stats.balances.rows if r["account"] == account]
        ax.step([r["at"] for r in rows],
                [r["balance_cents"] / 100 for r in rows],
                where="post", label=account)
    ax.set_ylabel("balance ($)")
    ax.set_xlabel("time (epoch ms)")
    ax.legend()
    ax.set_title("Account balances")
    fig.tight_layout()
    path = out_dir / "account_balances.svg"
    fig.savefig(path)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    rows = stats.buyers.rows
    ax.bar([r["resident"] for r in rows], [r["purchase_count"] for r in rows],
           color="#48a878")
    label = f"top {stats.top_share:.0%} of residents cover {stats.coverage:.0%}" \
        if stats.top_share is not None else "no settled purchases"
    ax.set_title(f"Purchases per resident ({label})")
    ax.set_ylabel("settled purchases")
    fig.tight_layout()
    path = out_dir / "purchase_counts.svg"
    fig.savefig(path)
    plt.close(fig)
    paths.append(path)
    return paths
