from invoke import task


@task
def test(c, cov=True, verbose=False, integration=False):
    """
    Runs all tests in the 'tests/' directory
    """
    cmd = 'pytest tests'
    if verbose:
        cmd += ' -v'
    if not integration:
        cmd += ' -m "not dafny"'
    if cov:
        cmd = 'coverage run --source dafnystudio -m ' + cmd

    c.run(cmd, pty=True)
    if cov:
        c.run('coverage report -m', pty=True)
