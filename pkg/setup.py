#!/usr/bin/env python

import os
import os.path as osp
import subprocess

from setuptools import setup, find_packages

# Release number, bumped at every tagged release
MAJOR, MINOR, MICRO = 0, 1, 0


def _git(*args):
    """ Output of a git command run in the C locale, '' on failure """
    env = {k: os.environ[k] for k in ('SYSTEMROOT', 'PATH') if k in os.environ}
    env.update(LANGUAGE='C', LANG='C', LC_ALL='C')
    try:
        out = subprocess.run(['git'] + list(args), stdout=subprocess.PIPE, stderr=subprocess.DEVNULL,
                             env=env, cwd=osp.dirname(osp.realpath(__file__))).stdout
    except OSError:
        return ''
    return out.strip().decode('ascii', 'replace')


def git_version():
    """ Revision, version numbers, commits since the last tag and ``git describe`` label """
    version = [MAJOR, MINOR, MICRO]
    revision = 'unknown'
    label = '.'.join(map(str, version))
    count = 0

    # Only trust git when this file sits at the top of the work tree
    if _git('rev-parse', '--show-toplevel') == osp.dirname(osp.realpath(__file__)):
        revision = _git('rev-parse', 'HEAD') or revision
        tag = _git('describe', '--abbrev=0', '--tags')
        if tag.startswith('v') and tag.count('.') == 2:
            version = tag[1:].split('.')
            label = _git('describe', '--tags') or label
            count = int(_git('rev-list', tag + '..', '--count') or 0)

    return revision, version, count, label


def write_version(filename='graphbench/info.py'):
    revision, version, count, label = git_version()
    with open(filename, 'w') as fh:
        fh.write(f"""# This file is automatically generated from graphbench setup.py
git_revision = '{revision}'
git_revision_short = git_revision[:7]
git_count = {count}

major = {version[0]}
minor = {version[1]}
micro = {version[2]}

release = 'v' + '.'.join(map(str, [major, minor, micro]))

# Commits after the release tag are appended
version = release
if git_count > 0:
    version += '+' + str(git_count)

label = '{label}'
""")
    return '.'.join(map(str, version))


setup(name='graphbench',
      version=write_version(),
      python_requires='>=3.8',
      install_requires=['numpy>=1.17', 'scipy>=1.4', 'netCDF4>=1.3.1', 'sisl>=0.11.0', 'matplotlib>=3.0'],
      extras_require={'test': ['pytest>=6']},
      description='Graph500-style benchmark of graph construction, BFS and SSSP kernels',
      license='LGPL',
      packages=find_packages(include=['graphbench', 'graphbench.*']),
      entry_points={'console_scripts': ['graphbench=graphbench.cli:main']})
